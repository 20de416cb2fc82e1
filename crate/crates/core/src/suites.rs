//! Canned batches of theorems: each case is searched, checked, and reported.

use std::fmt;
use std::str::FromStr;

use crate::dgss::{equal_dgss, verify_dgss_lemmas};
use crate::peano::{eval_zero, verify_peano, zero_contradiction_demo, Numeral};
use crate::proof::{check_proof, Proof};
use crate::rules::{make_system, Equation, SystemName};
use crate::search::{prove_equal, SearchConfig, SearchOutcome, SearchStats};
use crate::term::{parse_word, Word, TRIPLE};

const LEMMA_SAMPLES: usize = 10_000;
const LEMMA_SEED: u64 = 42;
const PEANO_MAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Er,
    Pr01,
    Dits,
    Collapse,
    Dgss,
    Peano,
}

impl SuiteId {
    pub const ALL: [SuiteId; 6] = [
        SuiteId::Er,
        SuiteId::Pr01,
        SuiteId::Dits,
        SuiteId::Collapse,
        SuiteId::Dgss,
        SuiteId::Peano,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Er => "er",
            SuiteId::Pr01 => "pr01",
            SuiteId::Dits => "dits",
            SuiteId::Collapse => "collapse",
            SuiteId::Dgss => "dgss",
            SuiteId::Peano => "peano",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?} (expected er, pr01, dits, collapse, dgss or peano)")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteId {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    /// A proof was found and the checker accepted it.
    Proved {
        steps: usize,
        stats: SearchStats,
    },
    /// A non-proof check (sampling, decider, numerals) succeeded.
    Passed(String),
    Failed(String),
}

impl CaseStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, CaseStatus::Failed(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub label: String,
    pub statement: String,
    pub status: CaseStatus,
    pub proof: Option<Proof>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub cases: Vec<CaseResult>,
    /// Extra findings that are reported but not counted as cases.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.status.ok()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases.len()
    }

    pub fn proofs(&self) -> impl Iterator<Item = &Proof> {
        self.cases.iter().filter_map(|c| c.proof.as_ref())
    }

    pub fn summary(&self) -> String {
        let verb = match self.suite {
            SuiteId::Dgss | SuiteId::Peano => "passed",
            _ => "proved",
        };
        format!("{}/{} {}", self.passed(), self.cases.len(), verb)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.cases {
            let tag = if c.status.ok() { "ok  " } else { "FAIL" };
            let what = match &c.status {
                CaseStatus::Proved { steps, stats } => {
                    format!("proved, {steps} steps, {} nodes expanded", stats.expanded)
                }
                CaseStatus::Passed(d) => d.clone(),
                CaseStatus::Failed(d) => d.clone(),
            };
            writeln!(f, "[{tag}] {:<10} {:<28} {what}", c.label, c.statement)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(f, "{}", self.summary())
    }
}

fn word(s: &str) -> Word {
    parse_word(s).expect("suite words are well formed")
}

fn eqn(l: &str, r: &str) -> Equation {
    Equation::new(word(l), word(r))
}

/// Searches, then replays the proof through the checker before reporting it.
fn prove_case(
    label: String,
    system: SystemName,
    hyps: Vec<Equation>,
    goal: Equation,
    config: &SearchConfig,
) -> CaseResult {
    let statement = if hyps.is_empty() {
        goal.to_string()
    } else {
        let hs: Vec<String> = hyps.iter().map(ToString::to_string).collect();
        format!("{} => {}", hs.join(", "), goal)
    };
    let (status, proof) = match prove_equal(&goal, &make_system(system), &hyps, config) {
        Ok(SearchOutcome::Found { proof, stats }) => match check_proof(&proof) {
            Ok(()) => (
                CaseStatus::Proved {
                    steps: proof.len(),
                    stats,
                },
                Some(proof),
            ),
            Err(e) => (CaseStatus::Failed(format!("checker: {e}")), None),
        },
        Ok(SearchOutcome::NotFound { stats, bound }) => (
            CaseStatus::Failed(format!(
                "not found, {} nodes expanded, bound {bound}",
                stats.expanded
            )),
            None,
        ),
        Err(e) => (CaseStatus::Failed(e.to_string()), None),
    };
    CaseResult {
        label,
        statement,
        status,
        proof,
    }
}

pub fn run_suite(id: SuiteId) -> SuiteReport {
    run_suite_with(id, &SearchConfig::default())
}

pub fn run_suite_with(id: SuiteId, config: &SearchConfig) -> SuiteReport {
    let (cases, notes) = match id {
        SuiteId::Er => (er_cases(config), vec![]),
        SuiteId::Pr01 => (pr01_cases(config), vec![]),
        SuiteId::Dits => (dits_cases(config), vec![]),
        SuiteId::Collapse => collapse_cases(config),
        SuiteId::Dgss => (dgss_cases(config), vec![]),
        SuiteId::Peano => (peano_cases(), vec![]),
    };
    SuiteReport {
        suite: id,
        cases,
        notes,
    }
}

/// Unordered pairs of distinct triple atoms.
fn pairs() -> [(&'static str, &'static str); 3] {
    [
        (TRIPLE[0], TRIPLE[1]),
        (TRIPLE[0], TRIPLE[2]),
        (TRIPLE[1], TRIPLE[2]),
    ]
}

/// `p a = q a => p = q` for all distinct `p, q` and every `a`.
fn er_cases(config: &SearchConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for (p, q) in pairs() {
        for a in TRIPLE {
            let hyp = eqn(&format!("{p} {a}"), &format!("{q} {a}"));
            let label = format!("ER {}", out.len() + 1);
            out.push(prove_case(
                label,
                SystemName::DitPlus,
                vec![hyp],
                eqn(p, q),
                config,
            ));
        }
    }
    out
}

/// `r a = r b => a = b` for every `r` and all distinct `a, b`.
fn pr01_cases(config: &SearchConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for r in TRIPLE {
        for (a, b) in pairs() {
            let hyp = eqn(&format!("{r} {a}"), &format!("{r} {b}"));
            let label = format!("PR01 {}", out.len() + 1);
            out.push(prove_case(
                label,
                SystemName::DitPlus,
                vec![hyp],
                eqn(a, b),
                config,
            ));
        }
    }
    out
}

fn dits_cases(config: &SearchConfig) -> Vec<CaseResult> {
    [
        ("Lxzz", "x z", "z"),
        ("Lxyyx", "x y", "y x"),
        ("Lxxx", "x x", "x"),
    ]
    .into_iter()
    .map(|(label, l, r)| prove_case(label.into(), SystemName::Dits, vec![], eqn(l, r), config))
    .collect()
}

fn collapse_cases(config: &SearchConfig) -> (Vec<CaseResult>, Vec<String>) {
    let cases = vec![
        prove_case(
            "x=y".into(),
            SystemName::DitPlus,
            vec![eqn("x", "y")],
            eqn("x", "z"),
            config,
        ),
        prove_case(
            "x=z".into(),
            SystemName::DitPlus,
            vec![eqn("x", "z")],
            eqn("x", "y"),
            config,
        ),
        prove_case(
            "y=z".into(),
            SystemName::DitPlus,
            vec![eqn("y", "z")],
            eqn("x", "x x"),
            config,
        ),
    ];
    // x = x x = x x x = ...: each finite stage is an equation we can prove
    let mut notes = Vec::new();
    for k in 2..=5 {
        let rhs = vec!["x"; k].join(" ");
        let c = prove_case(
            String::new(),
            SystemName::DitPlus,
            vec![eqn("y", "z")],
            eqn("x", &rhs),
            config,
        );
        let what = match c.status {
            CaseStatus::Proved { steps, .. } => format!("proved in {steps} steps"),
            CaseStatus::Passed(d) | CaseStatus::Failed(d) => d,
        };
        notes.push(format!("progression under y = z: x = {rhs} {what}"));
    }
    (cases, notes)
}

fn dgss_cases(config: &SearchConfig) -> Vec<CaseResult> {
    let report = verify_dgss_lemmas(LEMMA_SAMPLES, LEMMA_SEED);
    let mut out: Vec<CaseResult> = report
        .properties
        .iter()
        .map(|p| CaseResult {
            label: p.name.to_string(),
            statement: p.description.to_string(),
            status: if p.passed == report.samples {
                CaseStatus::Passed(format!(
                    "{}/{} samples, {} with hypothesis true, seed {}",
                    p.passed, report.samples, p.nontrivial, report.seed
                ))
            } else {
                CaseStatus::Failed(format!("{}/{} samples", p.passed, report.samples))
            },
            proof: None,
        })
        .collect();

    // concrete instances proved by rewriting and confirmed by the decider
    let concrete = [
        ("rw cancel", vec![], eqn("a a' b", "b")),
        ("rw inverse", vec![], eqn("a' a", "e")),
        (
            "rw lm2c",
            vec![eqn("z x", "e"), eqn("z y", "e")],
            eqn("x", "y"),
        ),
        ("rw pr2e", vec![eqn("z x", "z y")], eqn("x", "y")),
        ("rw pr2f", vec![eqn("x z", "y z")], eqn("x", "y")),
    ];
    for (label, hyps, goal) in concrete {
        let unconditional = hyps.is_empty();
        let mut c = prove_case(label.into(), SystemName::Dgss, hyps, goal.clone(), config);
        if unconditional && c.status.ok() && !equal_dgss(&goal.lhs, &goal.rhs) {
            c.status = CaseStatus::Failed("decider disagrees with the proof".into());
        }
        out.push(c);
    }
    out
}

fn peano_cases() -> Vec<CaseResult> {
    let report = verify_peano(PEANO_MAX).expect("range is valid");
    let mut out: Vec<CaseResult> = report
        .items
        .iter()
        .map(|i| CaseResult {
            label: format!("item {}", i.index),
            statement: i.name.to_string(),
            status: if i.passed {
                CaseStatus::Passed(i.detail.clone())
            } else {
                CaseStatus::Failed(i.detail.clone())
            },
            proof: None,
        })
        .collect();

    let two = eval_zero(&word("0 (1 1)"));
    out.push(CaseResult {
        label: "0·2".into(),
        statement: "0 (1 1) = 1 1".into(),
        status: match Numeral::from_word(&two) {
            Some(n) if n.value() == 2 => CaseStatus::Passed(n.to_string()),
            _ => CaseStatus::Failed(format!("evaluates to {two}")),
        },
        proof: None,
    });

    let demo = zero_contradiction_demo();
    out.push(CaseResult {
        label: "zero".into(),
        statement: "1 0 = 1".into(),
        status: if demo.contradiction() {
            CaseStatus::Passed("0 has 1 as successor, so 0 is no numeral".into())
        } else {
            CaseStatus::Failed(format!("1 0 evaluates to {}", demo.normalized))
        },
        proof: None,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>(), Ok(id));
        }
        assert_eq!("ER".parse::<SuiteId>(), Ok(SuiteId::Er));
        assert!("xyz".parse::<SuiteId>().is_err());
    }

    #[test]
    fn dits_suite() {
        let r = run_suite(SuiteId::Dits);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.summary(), "3/3 proved");
    }

    #[test]
    fn collapse_suite() {
        let r = run_suite(SuiteId::Collapse);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.notes.len(), 4);
    }

    #[test]
    fn peano_suite() {
        let r = run_suite(SuiteId::Peano);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.cases.len(), 7);
    }
}
