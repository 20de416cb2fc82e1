//! Command-line front end. [`dispatch`] does all the work and returns the
//! exit code with captured output so tests can drive it in-process.
//!
//! Exit codes: 0 success, 2 not found / refuted within bounds, 1 usage or
//! input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::models::{run_query, ModelQuery};
use crate::peano::{eval_zero, verify_peano, zero_contradiction_demo, Numeral};
use crate::proof::{check_proof, ProofScript};
use crate::rules::{make_system, Equation, SystemName};
use crate::search::{prove_equal, SearchConfig, SearchOutcome};
use crate::suites::{run_suite, SuiteId};
use crate::term::parse_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "relcalc",
    version,
    about = "Equational prover, decider and model finder for the relational calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the flattened word of a term
    Parse { expr: String },
    /// Search for a proof of an equation
    Prove {
        #[arg(long)]
        system: SystemName,
        /// Hypothesis equation, repeatable
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        #[arg(long, default_value_t = 30)]
        max_depth: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        equation: String,
    },
    /// Verify a JSON proof script
    Check { file: PathBuf },
    /// Run a canned theorem suite
    Suite { suite: SuiteId },
    /// Enumerate or count finite models
    Models {
        #[arg(long)]
        system: SystemName,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Numerals and the Peano checks
    Peano {
        #[command(subcommand)]
        command: PeanoCommand,
    },
}

#[derive(Debug, Subcommand)]
enum PeanoCommand {
    /// Eliminate 0 from a word and read it as a numeral
    Eval {
        expr: String,
    },
    Verify {
        #[arg(long = "max", default_value_t = 64)]
        max: usize,
    },
    ZeroDemo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn status(success: bool, stdout: String) -> Self {
        Outcome {
            code: if success { EXIT_OK } else { EXIT_NOT_FOUND },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Parse { expr } => match parse_word(&expr) {
            Ok(w) => Outcome::ok(format!("{w}\n")),
            Err(e) => Outcome::input_error(e),
        },
        Command::Prove {
            system,
            hyps,
            max_depth,
            max_len,
            max_nodes,
            format,
            equation,
        } => {
            let config = SearchConfig {
                max_word_len: max_len,
                max_nodes,
                max_depth,
            };
            prove(system, &hyps, config, format, &equation)
        }
        Command::Check { file } => check(&file),
        Command::Suite { suite } => {
            let report = run_suite(suite);
            Outcome::status(report.all_passed(), report.to_string())
        }
        Command::Models {
            system,
            size,
            count_only,
            limit,
        } => models(system, size, count_only, limit),
        Command::Peano { command } => peano(command),
    }
}

fn prove(
    system: SystemName,
    hyps: &[String],
    config: SearchConfig,
    format: Format,
    equation: &str,
) -> Outcome {
    let goal: Equation = match equation.parse() {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(format_args!("goal: {e}")),
    };
    let mut hypotheses = Vec::with_capacity(hyps.len());
    for (i, h) in hyps.iter().enumerate() {
        match h.parse() {
            Ok(eq) => hypotheses.push(eq),
            Err(e) => return Outcome::input_error(format_args!("hypothesis {i}: {e}")),
        }
    }
    match prove_equal(&goal, &make_system(system), &hypotheses, &config) {
        Err(e) => Outcome::input_error(e),
        Ok(SearchOutcome::Found { proof, stats }) => {
            let out = match format {
                Format::Json => proof.to_json() + "\n",
                Format::Text => {
                    let mut s = format!(
                        "proved {} under {} in {} steps ({} nodes expanded)\n",
                        proof.goal,
                        system,
                        proof.len(),
                        stats.expanded
                    );
                    s.push_str(&proof.render());
                    s
                }
            };
            Outcome::ok(out)
        }
        Ok(SearchOutcome::NotFound { stats, bound }) => Outcome::status(
            false,
            format!(
                "not found: {} under {}, {} nodes expanded, {} discovered, bound hit: {}\n",
                goal, system, stats.expanded, stats.discovered, bound
            ),
        ),
    }
}

fn check(file: &PathBuf) -> Outcome {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format_args!("{}: {e}", file.display())),
    };
    let proof = match ProofScript::from_json(&text).and_then(|s| s.to_proof()) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    match check_proof(&proof) {
        Ok(()) => Outcome::ok(format!(
            "ok: {} under {} in {} steps\n",
            proof.goal,
            proof.system,
            proof.len()
        )),
        Err(f) => Outcome::status(false, format!("{f}\n")),
    }
}

fn models(system: SystemName, size: usize, count_only: bool, limit: Option<usize>) -> Outcome {
    let q = ModelQuery {
        limit,
        count_only,
        ..ModelQuery::new(system, size)
    };
    let result = match run_query(&q) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let mut out = String::new();
    if count_only {
        writeln!(out, "{}", result.count).unwrap();
    } else {
        for (i, m) in result.models.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&m.to_text());
        }
    }
    Outcome::status(result.count > 0, out)
}

fn peano(command: PeanoCommand) -> Outcome {
    match command {
        PeanoCommand::Eval { expr } => match parse_word(&expr) {
            Err(e) => Outcome::input_error(e),
            Ok(w) => {
                let v = eval_zero(&w);
                Outcome::ok(match Numeral::from_word(&v) {
                    Some(n) => format!("{n}\n"),
                    None => format!("{v}\n"),
                })
            }
        },
        PeanoCommand::Verify { max } => match verify_peano(max) {
            Ok(r) => Outcome::status(r.all_passed(), r.to_string()),
            Err(e) => Outcome::input_error(e),
        },
        PeanoCommand::ZeroDemo => {
            let d = zero_contradiction_demo();
            Outcome::ok(d.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("relcalc").chain(args.iter().copied()))
    }

    #[test]
    fn parse_prints_flattened_word() {
        let o = run(&["parse", "((x y) z)"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "x y z\n"));
        assert_eq!(run(&["parse", "(x"]).code, 1);
    }

    #[test]
    fn prove_ax7() {
        let o = run(&["prove", "--system", "dit", "z y = x"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("in 1 steps"));
    }

    #[test]
    fn not_found_is_exit_two() {
        let o = run(&["prove", "--system", "dit", "--max-len", "3", "z x = z"]);
        assert_eq!(o.code, 2, "{o:?}");
        assert!(o.stdout.contains("nodes expanded"));
        assert!(o.stdout.contains("bound hit"));
    }

    #[test]
    fn usage_errors_are_exit_one() {
        assert_eq!(run(&["frobnicate"]).code, 1);
        assert_eq!(run(&["prove", "--bogus"]).code, 1);
        assert_eq!(run(&["prove", "--system", "nope", "a = a"]).code, 1);
        assert_eq!(run(&["suite", "nope"]).code, 1);
        assert!(!run(&["frobnicate"]).stderr.is_empty());
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn peano_eval_example() {
        let o = run(&["peano", "eval", "0 (1 1)"]);
        assert_eq!(o.stdout, "1 1 (= 2)\n");
    }

    #[test]
    fn model_count() {
        let o = run(&["models", "--system", "dgss", "--size", "3", "--count-only"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "3\n"));
        assert_eq!(run(&["models", "--system", "dit", "--size", "2"]).code, 2);
        assert_eq!(run(&["models", "--system", "dit", "--size", "99"]).code, 1);
    }
}
