pub mod cli;
pub mod dgss;
pub mod models;
pub mod peano;
pub mod proof;
pub mod relsets;
pub mod rules;
pub mod search;
pub mod suites;
pub mod term;
