//! Relational sets: membership `q·x = x`, subsets, the function criterion,
//! and the self-membership report, both symbolically and inside finite models.

use std::fmt;

use crate::dgss::equal_dgss;
use crate::models::{Model, ModelError};
use crate::rules::{make_system, Equation, SystemName};
use crate::search::{prove_equal, Bound, SearchConfig, SearchError, SearchOutcome};
use crate::term::{Atom, Word};

/// A relational set: a quality atom read in some universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelSet {
    quality: Atom,
}

impl RelSet {
    /// Inverse-marked atoms are not qualities.
    pub fn new(quality: Atom) -> Option<Self> {
        (!quality.is_inverted()).then_some(RelSet { quality })
    }

    pub fn quality(&self) -> &Atom {
        &self.quality
    }

    pub fn contains(&self, x: &Word, universe: &Universe<'_>) -> Result<Membership, RelSetError> {
        is_member(&self.quality, x, universe)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Universe<'a> {
    /// Equational reasoning in a system, bounded by the search config.
    Symbolic {
        system: SystemName,
        config: SearchConfig,
    },
    Model(&'a Model),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    Undecided,
}

#[derive(Debug, thiserror::Error)]
pub enum RelSetError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("quality must not carry an inverse mark")]
    InvertedQuality,
}

fn elements(model: &Model, w: &Word) -> Result<Vec<usize>, ModelError> {
    w.atoms().iter().map(|a| model.element_of(a)).collect()
}

/// Is `x` in the relational set of quality `q`, i.e. does `q·x = x` hold?
///
/// Under DGSS the free-reduction decider gives a definite answer. Other
/// systems answer from bounded proof search, which is `Undecided` unless a
/// proof is found or both sides' classes are exhausted.
pub fn is_member(q: &Atom, x: &Word, universe: &Universe<'_>) -> Result<Membership, RelSetError> {
    if q.is_inverted() {
        return Err(RelSetError::InvertedQuality);
    }
    let qx = Word::single(q.clone()).concat(x);
    match universe {
        Universe::Model(m) => {
            let qe = m.element_of(q)?;
            let xe = m.product(&elements(m, x)?);
            Ok(if m.op(qe, xe) == xe {
                Membership::Member
            } else {
                Membership::NotMember
            })
        }
        Universe::Symbolic {
            system: SystemName::Dgss,
            ..
        } => Ok(if equal_dgss(&qx, x) {
            Membership::Member
        } else {
            Membership::NotMember
        }),
        Universe::Symbolic { system, config } => {
            let goal = Equation::new(qx, x.clone());
            let out = prove_equal(&goal, &make_system(*system), &[], config)?;
            Ok(match out {
                SearchOutcome::Found { .. } => Membership::Member,
                // both equivalence classes were enumerated completely
                SearchOutcome::NotFound {
                    bound: Bound::None, ..
                } => Membership::NotMember,
                SearchOutcome::NotFound { .. } => Membership::Undecided,
            })
        }
    }
}

/// One of the distinguished instances `x = a`, `x = b`, `x = a = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCase {
    pub label: &'static str,
    pub in_b: bool,
    pub in_a: bool,
}

impl SpecialCase {
    pub fn holds(&self) -> bool {
        !self.in_b || self.in_a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetReport {
    pub holds: bool,
    /// Elements fixed by `b` but not by `a`.
    pub counterexamples: Vec<usize>,
    pub special_cases: Vec<SpecialCase>,
}

/// `B ⊆ A` iff every element fixed by `b` is fixed by `a`.
pub fn is_subset(b: &Atom, a: &Atom, model: &Model) -> Result<SubsetReport, ModelError> {
    let be = model.element_of(b)?;
    let ae = model.element_of(a)?;
    let fixes = |q: usize, x: usize| model.op(q, x) == x;
    let counterexamples: Vec<usize> = (0..model.size())
        .filter(|&x| fixes(be, x) && !fixes(ae, x))
        .collect();
    let case = |label, x| SpecialCase {
        label,
        in_b: fixes(be, x),
        in_a: fixes(ae, x),
    };
    let mut special_cases = vec![case("x = a", ae), case("x = b", be)];
    if ae == be {
        special_cases.push(case("x = a = b", ae));
    }
    Ok(SubsetReport {
        holds: counterexamples.is_empty(),
        counterexamples,
        special_cases,
    })
}

/// Left cancellation of `f·x`: `f·x·y = f·x·z` implies `y = z` for all
/// `x, y, z` in the carrier.
pub fn is_function_rel(f: usize, model: &Model) -> Result<bool, ModelError> {
    is_function_rel_restricted(f, None, None, model)
}

/// As [`is_function_rel`], with `x` ranging over the set of quality `domain`
/// and `y, z` over the set of quality `codomain` when given.
pub fn is_function_rel_restricted(
    f: usize,
    domain: Option<usize>,
    codomain: Option<usize>,
    model: &Model,
) -> Result<bool, ModelError> {
    let n = model.size();
    for q in [Some(f), domain, codomain].into_iter().flatten() {
        if q >= n {
            return Err(ModelError::OutOfRange(q));
        }
    }
    let member = |q: Option<usize>, x: usize| q.is_none_or(|q| model.op(q, x) == x);
    for x in (0..n).filter(|&x| member(domain, x)) {
        let fx = model.op(f, x);
        let bs: Vec<usize> = (0..n).filter(|&y| member(codomain, y)).collect();
        for (i, &y) in bs.iter().enumerate() {
            for &z in &bs[i + 1..] {
                if model.op(fx, y) == model.op(fx, z) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Elements with `x·x = x` (self-membered with quality `x`) and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RussellReport {
    pub self_membered: Vec<usize>,
    pub non_self_membered: Vec<usize>,
}

pub fn russell_report(model: &Model) -> RussellReport {
    let (self_membered, non_self_membered) = (0..model.size()).partition(|&x| model.op(x, x) == x);
    RussellReport {
        self_membered,
        non_self_membered,
    }
}

impl fmt::Display for RussellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut all: Vec<(usize, bool)> = self
            .self_membered
            .iter()
            .map(|&x| (x, true))
            .chain(self.non_self_membered.iter().map(|&x| (x, false)))
            .collect();
        all.sort();
        for (x, member) in all {
            if member {
                writeln!(f, "{x}: self-membered ({x}·{x} = {x})")?;
            } else {
                writeln!(f, "{x}: not self-membered ({x}·{x} ≠ {x})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_word;

    fn z3() -> Model {
        Model::cyclic(3, &[("e", 0)])
    }

    fn a(s: &str) -> Atom {
        Atom::named(s)
    }

    #[test]
    fn model_membership() {
        let m = z3();
        let u = Universe::Model(&m);
        assert_eq!(
            is_member(&a("0"), &parse_word("2").unwrap(), &u).unwrap(),
            Membership::Member
        );
        assert_eq!(
            is_member(&a("1"), &parse_word("1").unwrap(), &u).unwrap(),
            Membership::NotMember
        );
        assert!(is_member(&a("q"), &parse_word("1").unwrap(), &u).is_err());
    }

    #[test]
    fn symbolic_membership() {
        let u = Universe::Symbolic {
            system: SystemName::Dgss,
            config: SearchConfig::default(),
        };
        for x in ["a", "a b c'", "e"] {
            assert_eq!(
                is_member(&a("e"), &parse_word(x).unwrap(), &u).unwrap(),
                Membership::Member
            );
        }
        assert_eq!(
            is_member(&a("b"), &parse_word("a").unwrap(), &u).unwrap(),
            Membership::NotMember
        );
        let dgs = Universe::Symbolic {
            system: SystemName::Dgs,
            config: SearchConfig::default(),
        };
        assert_eq!(
            is_member(&a("e"), &parse_word("a b").unwrap(), &dgs).unwrap(),
            Membership::Member
        );
        let small = Universe::Symbolic {
            system: SystemName::Dit,
            config: SearchConfig {
                max_word_len: 4,
                max_nodes: 1000,
                max_depth: 8,
            },
        };
        assert_eq!(
            is_member(&a("y"), &parse_word("x").unwrap(), &small).unwrap(),
            Membership::Undecided
        );
        assert!(RelSet::new(Atom::inverse_of("q").unwrap()).is_none());
    }

    #[test]
    fn subset_examples() {
        let m = z3();
        assert!(is_subset(&a("1"), &a("1"), &m).unwrap().holds);
        assert!(is_subset(&a("1"), &a("0"), &m).unwrap().holds);
        let r = is_subset(&a("0"), &a("1"), &m).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexamples, vec![0, 1, 2]);
        let same = is_subset(&a("2"), &a("2"), &m).unwrap();
        assert_eq!(same.special_cases.len(), 3);
        assert!(same.special_cases.iter().all(SpecialCase::holds));
    }

    #[test]
    fn function_criterion() {
        let m = z3();
        assert!((0..3).all(|f| is_function_rel(f, &m).unwrap()));
        let constant = Model::from_rows(&[vec![0, 0], vec![1, 0]], &[]).unwrap();
        assert!(!is_function_rel(0, &constant).unwrap());
        let one = Model::cyclic(1, &[]);
        assert!(is_function_rel(0, &one).unwrap());
        assert!(is_function_rel(5, &one).is_err());
        assert!(is_function_rel_restricted(1, Some(0), Some(0), &m).unwrap());
    }

    #[test]
    fn russell_examples() {
        let r = russell_report(&z3());
        assert_eq!(r.self_membered, vec![0]);
        assert_eq!(r.non_self_membered, vec![1, 2]);
        assert_eq!(r.to_string().lines().count(), 3);
        let r = russell_report(&Model::cyclic(1, &[]));
        assert_eq!(r.self_membered, vec![0]);
        assert!(r.non_self_membered.is_empty());
    }
}
