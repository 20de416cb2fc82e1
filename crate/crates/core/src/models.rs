//! Finite models: associative operation tables with designated elements.
//!
//! Enumeration is a backtracking search over table cells in row-major order.
//! Every assignment is checked against the associativity triples it touches,
//! and cells fixed by the system's axioms are filled before the search starts.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::rules::SystemName;
use crate::term::{Atom, IDENTITY, TRIPLE};

/// Largest carrier size accepted by enumeration.
pub const MAX_MODEL_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("model size {size} above ceiling {ceiling}")]
    TooLarge { size: usize, ceiling: usize },
    #[error("model size must be at least 1")]
    Empty,
    #[error("atom {0} has no element in this model")]
    Unmapped(String),
    #[error("element {0} out of range")]
    OutOfRange(usize),
}

/// A carrier `0..n` with an `n×n` table (row = left operand).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    size: usize,
    table: Vec<usize>,
    designated: BTreeMap<String, usize>,
}

impl Model {
    pub fn new(
        size: usize,
        table: Vec<usize>,
        designated: BTreeMap<String, usize>,
    ) -> Result<Self, ModelError> {
        if size == 0 {
            return Err(ModelError::Empty);
        }
        if table.len() != size * size {
            return Err(ModelError::Malformed(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= size) {
            return Err(ModelError::Malformed(format!(
                "entry {bad} outside 0..{size}"
            )));
        }
        if let Some((name, v)) = designated.iter().find(|(_, &v)| v >= size) {
            return Err(ModelError::Malformed(format!(
                "{name}={v} outside 0..{size}"
            )));
        }
        Ok(Model {
            size,
            table,
            designated,
        })
    }

    /// Builds a model from rows and `(name, element)` designations.
    pub fn from_rows(
        rows: &[Vec<usize>],
        designated: &[(&str, usize)],
    ) -> Result<Self, ModelError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(ModelError::Malformed("table is not square".into()));
        }
        let table = rows.concat();
        let designated = designated
            .iter()
            .map(|(n, v)| (n.to_string(), *v))
            .collect();
        Model::new(size, table, designated)
    }

    /// Addition modulo `n` with the given designations.
    pub fn cyclic(n: usize, designated: &[(&str, usize)]) -> Self {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Model::from_rows(&rows, designated).expect("cyclic table is well formed")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn designated(&self) -> &BTreeMap<String, usize> {
        &self.designated
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.designated.get(name).copied()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    /// Left-associated product of a non-empty element sequence.
    pub fn product(&self, elems: &[usize]) -> usize {
        let (first, rest) = elems.split_first().expect("non-empty product");
        rest.iter().fold(*first, |acc, &b| self.op(acc, b))
    }

    /// The element an atom denotes: a designated name or a decimal index.
    pub fn element_of(&self, atom: &Atom) -> Result<usize, ModelError> {
        if atom.is_inverted() {
            return Err(ModelError::Unmapped(atom.to_string()));
        }
        if let Some(v) = self.get(atom.name()) {
            return Ok(v);
        }
        match atom.name().parse::<usize>() {
            Ok(v) if v < self.size => Ok(v),
            _ => Err(ModelError::Unmapped(atom.to_string())),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let mal = |m: &str| ModelError::Malformed(m.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| mal("missing header"))?;
        let size: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| mal("header must be n=<size>"))?;
        let mut table = Vec::with_capacity(size * size);
        for _ in 0..size {
            let row = lines.next().ok_or_else(|| mal("missing row"))?;
            let vals: Vec<usize> = row
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| mal("non-numeric entry")))
                .collect::<Result<_, _>>()?;
            if vals.len() != size {
                return Err(mal("row length differs from n"));
            }
            table.extend(vals);
        }
        let mut designated = BTreeMap::new();
        if let Some(line) = lines.next() {
            let rest = line
                .strip_prefix("designated:")
                .ok_or_else(|| mal("expected designated: line"))?;
            for pair in rest.split_whitespace() {
                let (k, v) = pair.split_once('=').ok_or_else(|| mal("bad designation"))?;
                let v = v.parse().map_err(|_| mal("bad designation"))?;
                designated.insert(k.to_string(), v);
            }
        }
        if lines.next().is_some() {
            return Err(mal("trailing input"));
        }
        Model::new(size, table, designated)
    }
}

/// Designations print in role order (`x y z`, or `e`), then any others by name.
fn designation_order(designated: &BTreeMap<String, usize>) -> Vec<(&str, usize)> {
    let roles = [TRIPLE[0], TRIPLE[1], TRIPLE[2], IDENTITY];
    let mut out: Vec<(&str, usize)> = roles
        .iter()
        .filter_map(|r| designated.get(*r).map(|&v| (*r, v)))
        .collect();
    out.extend(
        designated
            .iter()
            .filter(|(k, _)| !roles.contains(&k.as_str()))
            .map(|(k, &v)| (k.as_str(), v)),
    );
    out
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.size)?;
        for a in 0..self.size {
            let row: Vec<String> = self.row(a).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        if !self.designated.is_empty() {
            let parts: Vec<String> = designation_order(&self.designated)
                .into_iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(f, "designated: {}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Associativity {
        a: usize,
        b: usize,
        c: usize,
    },
    MissingDesignation(&'static str),
    NotDistinct {
        first: &'static str,
        second: &'static str,
    },
    /// A ground axiom between designated elements, e.g. `ax6: x·y = y`.
    Ground {
        axiom: &'static str,
        equation: &'static str,
    },
    LeftIdentity {
        element: usize,
    },
    RightIdentity {
        element: usize,
    },
    NoLeftInverse {
        element: usize,
    },
    NoTwoSidedInverse {
        element: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            Violation::MissingDesignation(n) => write!(f, "{n} is not designated"),
            Violation::NotDistinct { first, second } => {
                write!(f, "{first} and {second} must be distinct")
            }
            Violation::Ground { axiom, equation } => write!(f, "{axiom} fails: {equation}"),
            Violation::LeftIdentity { element } => write!(f, "ax8 fails: e·{element} ≠ {element}"),
            Violation::RightIdentity { element } => {
                write!(f, "Lrxr fails: {element}·e ≠ {element}")
            }
            Violation::NoLeftInverse { element } => {
                write!(f, "ax9 fails: no z with z·{element} = e")
            }
            Violation::NoTwoSidedInverse { element } => {
                write!(f, "ax9a fails: no z with z·{element} = {element}·z = e")
            }
        }
    }
}

const TRIPLE_AXIOMS: [(&str, &str, [usize; 3], usize); 4] = [
    // (id, display, [left, right, expected] as indices into (x, y, z), min system level)
    ("ax6", "x·y = y", [0, 1, 1], 0),
    ("ax7", "z·y = x", [2, 1, 0], 0),
    ("Lzxz", "z·x = z", [2, 0, 2], 1),
    ("ax7a", "y·z = z·y", [1, 2, usize::MAX], 2),
];

fn triple_level(system: SystemName) -> usize {
    match system {
        SystemName::Dit => 0,
        SystemName::DitPlus => 1,
        _ => 2,
    }
}

/// Reports every violated instance of the system's axioms.
pub fn check_model(m: &Model, system: SystemName) -> Result<(), Vec<Violation>> {
    let n = m.size;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                    out.push(Violation::Associativity { a, b, c });
                }
            }
        }
    }
    if system.is_triple() {
        let mut elems = [0usize; 3];
        let mut missing = false;
        for (i, name) in TRIPLE.iter().enumerate() {
            match m.get(name) {
                Some(v) => elems[i] = v,
                None => {
                    out.push(Violation::MissingDesignation(name));
                    missing = true;
                }
            }
        }
        if !missing {
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                if elems[i] == elems[j] {
                    out.push(Violation::NotDistinct {
                        first: TRIPLE[i],
                        second: TRIPLE[j],
                    });
                }
            }
            let level = triple_level(system);
            for (axiom, equation, [l, r, want], min) in TRIPLE_AXIOMS {
                if level < min {
                    continue;
                }
                let lhs = m.op(elems[l], elems[r]);
                let rhs = if want == usize::MAX {
                    m.op(elems[r], elems[l])
                } else {
                    elems[want]
                };
                if lhs != rhs {
                    out.push(Violation::Ground { axiom, equation });
                }
            }
        }
    } else {
        match m.get(IDENTITY) {
            None => out.push(Violation::MissingDesignation(IDENTITY)),
            Some(e) => {
                for y in 0..n {
                    if m.op(e, y) != y {
                        out.push(Violation::LeftIdentity { element: y });
                    }
                    if system != SystemName::Dgs && m.op(y, e) != y {
                        out.push(Violation::RightIdentity { element: y });
                    }
                    let left = (0..n).any(|z| m.op(z, y) == e);
                    if !left {
                        out.push(Violation::NoLeftInverse { element: y });
                    }
                    if system == SystemName::Dgss
                        && !(0..n).any(|z| m.op(z, y) == e && m.op(y, z) == e)
                    {
                        out.push(Violation::NoTwoSidedInverse { element: y });
                    }
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelQuery {
    pub system: SystemName,
    pub size: usize,
    pub limit: Option<usize>,
    pub count_only: bool,
    pub ceiling: usize,
}

impl ModelQuery {
    pub fn new(system: SystemName, size: usize) -> Self {
        ModelQuery {
            system,
            size,
            limit: None,
            count_only: false,
            ceiling: MAX_MODEL_SIZE,
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.size == 0 {
            return Err(ModelError::Empty);
        }
        if self.size > self.ceiling {
            return Err(ModelError::TooLarge {
                size: self.size,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub count: u64,
    /// Empty for count-only queries.
    pub models: Vec<Model>,
}

/// Designation assignments in ascending lexicographic order.
fn designations(system: SystemName, n: usize) -> Vec<Vec<(&'static str, usize)>> {
    if system.is_triple() {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x != y && y != z && z != x {
                        out.push(vec![(TRIPLE[0], x), (TRIPLE[1], y), (TRIPLE[2], z)]);
                    }
                }
            }
        }
        out
    } else {
        (0..n).map(|e| vec![(IDENTITY, e)]).collect()
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    n: usize,
    system: SystemName,
    designation: &'a [(&'static str, usize)],
    table: Vec<usize>,
    forced: Vec<bool>,
    identity: Option<usize>,
    latin: bool,
}

impl<'a> Search<'a> {
    /// Fills the cells fixed by the axioms; `None` if they conflict.
    fn new(system: SystemName, n: usize, designation: &'a [(&'static str, usize)]) -> Option<Self> {
        let mut s = Search {
            n,
            system,
            designation,
            table: vec![UNSET; n * n],
            forced: vec![false; n * n],
            identity: None,
            latin: system == SystemName::Dgss,
        };
        let get = |name: &str| designation.iter().find(|(k, _)| *k == name).map(|p| p.1);
        if system.is_triple() {
            let e = [get("x")?, get("y")?, get("z")?];
            let level = triple_level(system);
            for (_, _, [l, r, want], min) in TRIPLE_AXIOMS {
                if level >= min && want != usize::MAX && !s.force(e[l], e[r], e[want]) {
                    return None;
                }
            }
        } else {
            let e = get(IDENTITY)?;
            s.identity = Some(e);
            for y in 0..n {
                if !s.force(e, y, y) {
                    return None;
                }
                if system != SystemName::Dgs && !s.force(y, e, y) {
                    return None;
                }
            }
        }
        for cell in 0..n * n {
            if s.forced[cell] && !s.consistent(cell / n, cell % n) {
                return None;
            }
        }
        Some(s)
    }

    fn force(&mut self, a: usize, b: usize, v: usize) -> bool {
        let cell = a * self.n + b;
        if self.table[cell] != UNSET && self.table[cell] != v {
            return false;
        }
        self.table[cell] = v;
        self.forced[cell] = true;
        true
    }

    fn at(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// Checks every associativity instance that reads cell `(i, j)` and is
    /// fully defined, plus the system's local constraints.
    fn consistent(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        let v = self.at(i, j);
        for k in 0..n {
            // (i·j)·k = i·(j·k)
            let jk = self.at(j, k);
            let vk = self.at(v, k);
            if jk != UNSET && vk != UNSET {
                let rhs = self.at(i, jk);
                if rhs != UNSET && rhs != vk {
                    return false;
                }
            }
            // (k·i)·j = k·(i·j)
            let ki = self.at(k, i);
            if ki != UNSET {
                let lhs = self.at(ki, j);
                let rhs = self.at(k, v);
                if lhs != UNSET && rhs != UNSET && lhs != rhs {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.at(a, b);
                // (a·b)·j with a·b = i, against a·(b·j)
                if ab == i {
                    let bj = self.at(b, j);
                    if bj != UNSET {
                        let rhs = self.at(a, bj);
                        if rhs != UNSET && rhs != v {
                            return false;
                        }
                    }
                }
                // i·(a·b) with a·b = j, against (i·a)·b
                if ab == j {
                    let ia = self.at(i, a);
                    if ia != UNSET {
                        let lhs = self.at(ia, b);
                        if lhs != UNSET && lhs != v {
                            return false;
                        }
                    }
                }
            }
        }
        if self.latin {
            for k in 0..n {
                if k != j && self.at(i, k) == v {
                    return false;
                }
                if k != i && self.at(k, j) == v {
                    return false;
                }
            }
        }
        if let Some(e) = self.identity {
            // a complete column needs a left inverse
            let col = (0..n).map(|z| self.at(z, j));
            if !col.clone().any(|c| c == UNSET) && !col.into_iter().any(|c| c == e) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, cell: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.n;
        if cell == n * n {
            let model = self.model();
            if check_model(&model, self.system).is_ok() {
                return visit(&self.table);
            }
            return true;
        }
        let (i, j) = (cell / n, cell % n);
        if self.forced[cell] {
            return self.run(cell + 1, visit);
        }
        for v in 0..n {
            self.table[cell] = v;
            if self.consistent(i, j) && !self.run(cell + 1, visit) {
                self.table[cell] = UNSET;
                return false;
            }
        }
        self.table[cell] = UNSET;
        true
    }

    fn model(&self) -> Model {
        let designated = self
            .designation
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect();
        Model {
            size: self.n,
            table: self.table.clone(),
            designated,
        }
    }
}

/// Visits models for one designation in table-lexicographic order until
/// `visit` returns false.
fn search_designation(
    system: SystemName,
    n: usize,
    designation: &[(&'static str, usize)],
    visit: &mut dyn FnMut(Model) -> bool,
) {
    if let Some(mut s) = Search::new(system, n, designation) {
        let d = designation;
        s.run(0, &mut |table| {
            let designated = d.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            visit(Model {
                size: n,
                table: table.to_vec(),
                designated,
            })
        });
    }
}

/// Runs a query; designations are searched in parallel and merged in order.
pub fn run_query(q: &ModelQuery) -> Result<QueryResult, ModelError> {
    q.validate()?;
    let designations = designations(q.system, q.size);
    if q.count_only {
        let count = designations
            .par_iter()
            .map(|d| {
                let mut c = 0u64;
                search_designation(q.system, q.size, d, &mut |_| {
                    c += 1;
                    true
                });
                c
            })
            .sum();
        return Ok(QueryResult {
            count,
            models: Vec::new(),
        });
    }
    let models: Vec<Model> = match q.limit {
        Some(limit) => {
            let mut out = Vec::new();
            for d in &designations {
                if out.len() >= limit {
                    break;
                }
                search_designation(q.system, q.size, d, &mut |m| {
                    out.push(m);
                    out.len() < limit
                });
            }
            out
        }
        None => designations
            .par_iter()
            .map(|d| {
                let mut out = Vec::new();
                search_designation(q.system, q.size, d, &mut |m| {
                    out.push(m);
                    true
                });
                out
            })
            .collect::<Vec<_>>()
            .concat(),
    };
    Ok(QueryResult {
        count: models.len() as u64,
        models,
    })
}

pub fn enumerate_models(q: &ModelQuery) -> Result<Vec<Model>, ModelError> {
    let q = ModelQuery {
        count_only: false,
        ..q.clone()
    };
    run_query(&q).map(|r| r.models)
}

pub fn count_models(system: SystemName, n: usize) -> Result<u64, ModelError> {
    let q = ModelQuery {
        count_only: true,
        ..ModelQuery::new(system, n)
    };
    run_query(&q).map(|r| r.count)
}

/// Smallest size with a model, with the first model in enumeration order.
pub fn find_min_model(
    system: SystemName,
    n_max: usize,
) -> Result<Option<(usize, Model)>, ModelError> {
    if n_max > MAX_MODEL_SIZE {
        return Err(ModelError::TooLarge {
            size: n_max,
            ceiling: MAX_MODEL_SIZE,
        });
    }
    for n in 1..=n_max {
        let q = ModelQuery {
            limit: Some(1),
            ..ModelQuery::new(system, n)
        };
        if let Some(m) = enumerate_models(&q)?.into_iter().next() {
            return Ok(Some((n, m)));
        }
    }
    Ok(None)
}
