//! Numerals as words of `1`, successor as left application of `1`, and a
//! finite check of the five Peano properties on that word model.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dgss::equal_dgss;
use crate::term::{Atom, Word};

pub const ONE: &str = "1";
pub const ZERO: &str = "0";

const RANDOM_TABLES: usize = 1000;
const TABLE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeanoError {
    #[error("{0} is not a numeral (numerals start at 1)")]
    NotPositive(usize),
    #[error("k_max must be at least 2, got {0}")]
    RangeTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numeral {
    value: usize,
    word: Word,
}

impl Numeral {
    pub fn value(&self) -> usize {
        self.value
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Reads a word back as a numeral if it consists only of `1`s.
    pub fn from_word(w: &Word) -> Option<Numeral> {
        w.atoms().iter().all(is_one).then(|| Numeral {
            value: w.len(),
            word: w.clone(),
        })
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (= {})", self.word, self.value)
    }
}

fn is_one(a: &Atom) -> bool {
    a.name() == ONE && !a.is_inverted()
}

fn is_zero(a: &Atom) -> bool {
    a.name() == ZERO && !a.is_inverted()
}

pub fn numeral(k: usize) -> Result<Numeral, PeanoError> {
    if k < 1 {
        return Err(PeanoError::NotPositive(k));
    }
    Ok(Numeral {
        value: k,
        word: ones(k),
    })
}

fn ones(k: usize) -> Word {
    Word::new(vec![Atom::named(ONE); k]).expect("k >= 1")
}

pub fn succ(w: &Word) -> Word {
    Word::single(Atom::named(ONE)).concat(w)
}

/// Deletes `0` atoms while more than one atom remains.
pub fn eval_zero(w: &Word) -> Word {
    let kept: Vec<Atom> = w.atoms().iter().filter(|a| !is_zero(a)).cloned().collect();
    Word::new(kept).unwrap_or_else(|| Word::single(Atom::named(ZERO)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeanoItem {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeanoReport {
    pub k_max: usize,
    pub items: Vec<PeanoItem>,
}

impl PeanoReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for PeanoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let verdict = if i.passed { "pass" } else { "FAIL" };
            writeln!(f, "item {} {}: {}  {}", i.index, i.name, verdict, i.detail)?;
        }
        writeln!(
            f,
            "{}/{} items hold for numerals up to {}",
            self.items.iter().filter(|i| i.passed).count(),
            self.items.len(),
            self.k_max
        )
    }
}

pub fn verify_peano(k_max: usize) -> Result<PeanoReport, PeanoError> {
    verify_peano_with(k_max, succ)
}

/// Same checks with a caller-supplied successor, for mutation testing.
pub fn verify_peano_with(
    k_max: usize,
    successor: impl Fn(&Word) -> Word,
) -> Result<PeanoReport, PeanoError> {
    if k_max < 2 {
        return Err(PeanoError::RangeTooSmall(k_max));
    }
    let nums: Vec<Word> = (1..=k_max).map(ones).collect();
    let zero_one = Word::from_names(&[ZERO, ONE]);
    let mut items = Vec::with_capacity(5);

    let reduced = eval_zero(&zero_one);
    items.push(PeanoItem {
        index: 1,
        name: "1 is a number",
        passed: reduced == nums[0],
        detail: format!("eval_zero({zero_one}) = {reduced}"),
    });

    let escapes: Vec<usize> = (1..=k_max)
        .filter(|&k| Numeral::from_word(&successor(&nums[k - 1])).is_none())
        .collect();
    items.push(PeanoItem {
        index: 2,
        name: "closure under successor",
        passed: escapes.is_empty(),
        detail: match escapes.first() {
            None => format!("succ(k) is a numeral for k = 1..{k_max}"),
            Some(k) => format!("succ({k}) is not a numeral"),
        },
    });

    let succs: Vec<Word> = nums.iter().map(&successor).collect();
    let mut collision = None;
    'pairs: for u in 0..k_max {
        for v in u + 1..k_max {
            // word equality, and the same verdict from the cancellation decider
            if succs[u] == succs[v] || equal_dgss(&succs[u], &succs[v]) {
                collision = Some((u + 1, v + 1));
                break 'pairs;
            }
        }
    }
    items.push(PeanoItem {
        index: 3,
        name: "successor is injective",
        passed: collision.is_none(),
        detail: match collision {
            None => format!("{} pairs distinct", k_max * (k_max - 1) / 2),
            Some((u, v)) => format!("succ({u}) = succ({v})"),
        },
    });

    let hits_one: Vec<usize> = (1..=k_max).filter(|&k| succs[k - 1] == nums[0]).collect();
    items.push(PeanoItem {
        index: 4,
        name: "1 is no successor",
        passed: hits_one.is_empty(),
        detail: match hits_one.first() {
            None => format!("succ(k) != 1 for k = 1..{k_max}"),
            Some(k) => format!("succ({k}) = 1"),
        },
    });

    items.push(induction_item(k_max, &succs));
    Ok(PeanoReport { k_max, items })
}

/// Where the successor sends numeral `k` (1-based), if it lands in range.
fn step_targets(k_max: usize, succs: &[Word]) -> Vec<Option<usize>> {
    succs
        .iter()
        .map(|w| {
            Numeral::from_word(w)
                .map(|n| n.value)
                .filter(|&v| v <= k_max)
        })
        .collect()
}

/// `P(1)` and `P(k) => P(succ k)` for every `k` whose successor is in range.
fn satisfies_hypothesis(table: &[bool], targets: &[Option<usize>]) -> bool {
    table[0]
        && targets
            .iter()
            .enumerate()
            .all(|(k, t)| !table[k] || t.is_none_or(|v| table[v - 1]))
}

fn induction_item(k_max: usize, succs: &[Word]) -> PeanoItem {
    let targets = step_targets(k_max, succs);
    let mut accepted = 0;
    let mut rejected = 0;
    let mut failure = None;
    let mut judge = |table: &[bool]| {
        if satisfies_hypothesis(table, &targets) {
            accepted += 1;
            if failure.is_none() {
                failure = table.iter().position(|p| !p).map(|k| k + 1);
            }
        } else {
            rejected += 1;
        }
    };
    // monotone seeds: true up to j, false beyond
    for j in 0..=k_max {
        let table: Vec<bool> = (1..=k_max).map(|k| k <= j).collect();
        judge(&table);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(TABLE_SEED);
    for _ in 0..RANDOM_TABLES {
        let density = rng.gen_range(0.5..1.0);
        let table: Vec<bool> = (0..k_max).map(|_| rng.gen_bool(density)).collect();
        judge(&table);
    }
    PeanoItem {
        index: 5,
        name: "induction",
        passed: failure.is_none(),
        detail: match failure {
            None => format!(
                "{accepted} tables meet the hypothesis and hold everywhere, {rejected} rejected"
            ),
            Some(k) => format!("a table meets the hypothesis but fails at {k}"),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDemo {
    pub succ_zero: Word,
    pub normalized: Word,
    pub one: Word,
}

impl ZeroDemo {
    /// `1·0 = 1` holds, so admitting 0 breaks "1 is no successor".
    pub fn contradiction(&self) -> bool {
        self.normalized == self.one
    }
}

impl fmt::Display for ZeroDemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "succ(0) = {}", self.succ_zero)?;
        writeln!(f, "eval_zero({}) = {}", self.succ_zero, self.normalized)?;
        writeln!(f, "numeral(1) = {}", self.one)?;
        if self.contradiction() {
            writeln!(f, "1·0 = 1 while 1·x != 1 for every number x")?;
            writeln!(f, "so 0 is excluded from the numerals")
        } else {
            writeln!(f, "no contradiction: 1·0 != 1")
        }
    }
}

pub fn zero_contradiction_demo() -> ZeroDemo {
    let succ_zero = succ(&Word::single(Atom::named(ZERO)));
    ZeroDemo {
        normalized: eval_zero(&succ_zero),
        succ_zero,
        one: ones(1),
    }
}
