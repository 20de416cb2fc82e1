//! Axiom systems as rewrite rules over words, and single-step rewriting.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{parse_equation, Atom, TermError, Word, IDENTITY, TRIPLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemName {
    Dit,
    DitPlus,
    Dits,
    Dgs,
    DgsPlus,
    Dgss,
}

impl SystemName {
    pub const ALL: [SystemName; 6] = [
        SystemName::Dit,
        SystemName::DitPlus,
        SystemName::Dits,
        SystemName::Dgs,
        SystemName::DgsPlus,
        SystemName::Dgss,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::Dit => "DIT",
            SystemName::DitPlus => "DIT+",
            SystemName::Dits => "DITS",
            SystemName::Dgs => "DGS",
            SystemName::DgsPlus => "DGS+",
            SystemName::Dgss => "DGSS",
        }
    }

    /// True for the triple systems (designated x, y, z).
    pub fn is_triple(self) -> bool {
        matches!(
            self,
            SystemName::Dit | SystemName::DitPlus | SystemName::Dits
        )
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown system {0:?} (expected one of DIT, DIT+, DITS, DGS, DGS+, DGSS)")]
pub struct UnknownSystem(pub String);

impl FromStr for SystemName {
    type Err = UnknownSystem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let t = t.strip_suffix("PLUS").map(|b| format!("{b}+")).unwrap_or(t);
        SystemName::ALL
            .into_iter()
            .find(|n| n.as_str() == t)
            .ok_or_else(|| UnknownSystem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "lr")]
    Lr,
    #[serde(rename = "rl")]
    Rl,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Lr => Direction::Rl,
            Direction::Rl => Direction::Lr,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lr => "lr",
            Direction::Rl => "rl",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lr" => Ok(Direction::Lr),
            "rl" => Ok(Direction::Rl),
            other => Err(format!("bad direction {other:?}")),
        }
    }
}

/// Which neighbour the identity atom may absorb when deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `e w = w`: the atom is deletable when something follows it.
    Left,
    /// `w e = w`: the atom is deletable when something precedes it.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleKind {
    /// `lhs = rhs` between fixed words.
    Ground { lhs: Word, rhs: Word },
    /// Deletion (lr) or insertion (rl) of the identity atom.
    IdentityElim { identity: Atom, side: Side },
    /// Deletion (lr) or insertion (rl) of an adjacent `a a'` or `a' a` pair.
    InverseCancel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: String,
    pub kind: RuleKind,
}

impl Rule {
    pub fn ground(id: &str, lhs: Word, rhs: Word) -> Self {
        Rule {
            id: id.to_string(),
            kind: RuleKind::Ground { lhs, rhs },
        }
    }

    fn ground_names(id: &str, lhs: &[&str], rhs: &[&str]) -> Self {
        Self::ground(id, Word::from_names(lhs), Word::from_names(rhs))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RuleKind::Ground { lhs, rhs } => write!(f, "{}: {lhs} = {rhs}", self.id),
            RuleKind::IdentityElim {
                identity,
                side: Side::Left,
            } => {
                write!(f, "{}: {identity} w = w", self.id)
            }
            RuleKind::IdentityElim {
                identity,
                side: Side::Right,
            } => {
                write!(f, "{}: w {identity} = w", self.id)
            }
            RuleKind::InverseCancel => write!(f, "{}: a a' = a' a = e", self.id),
        }
    }
}

/// Role of a designated atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    X,
    Y,
    Z,
    Identity,
}

/// A named axiom system: rules sorted by id, designated atoms, distinctness constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSystem {
    pub name: SystemName,
    pub rules: Vec<Rule>,
    pub designated: BTreeMap<String, Role>,
    pub distinct: Vec<(Atom, Atom)>,
}

impl RuleSystem {
    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Whether words may carry inverse marks under this system.
    pub fn allows_inverses(&self) -> bool {
        self.rules.iter().any(|r| r.kind == RuleKind::InverseCancel)
    }

    pub fn identity(&self) -> Option<&Atom> {
        self.rules.iter().find_map(|r| match &r.kind {
            RuleKind::IdentityElim { identity, .. } => Some(identity),
            _ => None,
        })
    }
}

pub fn make_system(name: SystemName) -> RuleSystem {
    let mut rules = Vec::new();
    let mut designated = BTreeMap::new();
    let mut distinct = Vec::new();
    if name.is_triple() {
        rules.push(Rule::ground_names("ax6", &["x", "y"], &["y"]));
        rules.push(Rule::ground_names("ax7", &["z", "y"], &["x"]));
        if name != SystemName::Dit {
            rules.push(Rule::ground_names("Lzxz", &["z", "x"], &["z"]));
        }
        if name == SystemName::Dits {
            rules.push(Rule::ground_names("ax7a", &["y", "z"], &["z", "y"]));
        }
        for (n, role) in TRIPLE.iter().zip([Role::X, Role::Y, Role::Z]) {
            designated.insert(n.to_string(), role);
        }
        let [x, y, z] = TRIPLE.map(Atom::named);
        distinct = vec![(x.clone(), y.clone()), (y, z.clone()), (z, x)];
    } else {
        let e = Atom::named(IDENTITY);
        rules.push(Rule {
            id: "ax8".into(),
            kind: RuleKind::IdentityElim {
                identity: e.clone(),
                side: Side::Left,
            },
        });
        if name != SystemName::Dgs {
            rules.push(Rule {
                id: "Lrxr".into(),
                kind: RuleKind::IdentityElim {
                    identity: e,
                    side: Side::Right,
                },
            });
        }
        if name == SystemName::Dgss {
            rules.push(Rule {
                id: "ax9a".into(),
                kind: RuleKind::InverseCancel,
            });
        }
        designated.insert(IDENTITY.to_string(), Role::Identity);
    }
    rules.sort_by(|a, b| a.id.cmp(&b.id));
    RuleSystem {
        name,
        rules,
        designated,
        distinct,
    }
}

/// Parses a system name and builds it.
pub fn system_by_name(name: &str) -> Result<RuleSystem, UnknownSystem> {
    name.parse().map(make_system)
}

/// A ground equation between two words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Equation { lhs, rhs }
    }

    pub fn flipped(&self) -> Self {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Equation {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_equation(s).map(|(l, r)| Equation::new(l, r))
    }
}

/// Rule id under which the i-th hypothesis is cited.
pub fn hypothesis_id(i: usize) -> String {
    format!("h{i}")
}

pub fn hypothesis_rules(hyps: &[Equation]) -> Vec<Rule> {
    hyps.iter()
        .enumerate()
        .map(|(i, h)| Rule::ground(&hypothesis_id(i), h.lhs.clone(), h.rhs.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule does not match at position {0}")]
    NoMatch(usize),
    #[error("rewrite would produce the empty word")]
    EmptyWord,
    #[error("result length {len} exceeds bound {max}")]
    TooLong { len: usize, max: usize },
    #[error("pair insertion needs the atom to insert")]
    MissingFill,
}

/// Applies `rule` at `pos` in direction `dir`.
///
/// `fill` names the first atom of the pair inserted by a right-to-left
/// inverse-cancel step; every other rewrite ignores it.
pub fn apply_rule(
    word: &Word,
    rule: &Rule,
    pos: usize,
    dir: Direction,
    fill: Option<&Atom>,
    max_len: usize,
) -> Result<Word, RewriteError> {
    let atoms = word.atoms();
    let n = atoms.len();
    let mut out: Vec<Atom>;
    match (&rule.kind, dir) {
        (RuleKind::Ground { lhs, rhs }, _) => {
            let (from, to) = match dir {
                Direction::Lr => (lhs, rhs),
                Direction::Rl => (rhs, lhs),
            };
            let end = pos + from.len();
            if end > n || atoms[pos..end] != *from.atoms() {
                return Err(RewriteError::NoMatch(pos));
            }
            out = Vec::with_capacity(n - from.len() + to.len());
            out.extend_from_slice(&atoms[..pos]);
            out.extend_from_slice(to.atoms());
            out.extend_from_slice(&atoms[end..]);
        }
        (RuleKind::IdentityElim { identity, side }, Direction::Lr) => {
            if pos >= n || atoms[pos] != *identity {
                return Err(RewriteError::NoMatch(pos));
            }
            if n < 2 {
                return Err(RewriteError::EmptyWord);
            }
            let ok = match side {
                Side::Left => pos + 1 < n,
                Side::Right => pos >= 1,
            };
            if !ok {
                return Err(RewriteError::NoMatch(pos));
            }
            out = atoms.to_vec();
            out.remove(pos);
        }
        (RuleKind::IdentityElim { identity, side }, Direction::Rl) => {
            let ok = match side {
                Side::Left => pos < n,
                Side::Right => pos >= 1 && pos <= n,
            };
            if !ok {
                return Err(RewriteError::NoMatch(pos));
            }
            out = atoms.to_vec();
            out.insert(pos, identity.clone());
        }
        (RuleKind::InverseCancel, Direction::Lr) => {
            if pos + 1 >= n || !atoms[pos].is_inverse_pair(&atoms[pos + 1]) {
                return Err(RewriteError::NoMatch(pos));
            }
            if n == 2 {
                return Err(RewriteError::EmptyWord);
            }
            out = atoms.to_vec();
            out.drain(pos..pos + 2);
        }
        (RuleKind::InverseCancel, Direction::Rl) => {
            let a = fill.ok_or(RewriteError::MissingFill)?;
            if pos > n {
                return Err(RewriteError::NoMatch(pos));
            }
            out = atoms.to_vec();
            out.splice(pos..pos, [a.clone(), a.flipped()]);
        }
    }
    if out.len() > max_len {
        return Err(RewriteError::TooLong {
            len: out.len(),
            max: max_len,
        });
    }
    Ok(Word::new(out).expect("non-empty by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn system_contents() {
        let dit = make_system(SystemName::Dit);
        assert_eq!(dit.rules.len(), 2);
        assert_eq!(
            dit.rule("ax6").unwrap().kind,
            RuleKind::Ground {
                lhs: w("x y"),
                rhs: w("y")
            }
        );
        assert_eq!(
            dit.rule("ax7").unwrap().kind,
            RuleKind::Ground {
                lhs: w("z y"),
                rhs: w("x")
            }
        );
        assert_eq!(dit.distinct.len(), 3);

        let dits = make_system(SystemName::Dits);
        let ids: Vec<_> = dits.rules.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["Lzxz", "ax6", "ax7", "ax7a"]);
        assert_eq!(
            dits.rule("ax7a").unwrap().kind,
            RuleKind::Ground {
                lhs: w("y z"),
                rhs: w("z y")
            }
        );

        let dgss = make_system(SystemName::Dgss);
        let ids: Vec<_> = dgss.rules.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["Lrxr", "ax8", "ax9a"]);
        assert!(dgss.allows_inverses());
        assert!(!make_system(SystemName::DgsPlus).allows_inverses());
        assert_eq!(make_system(SystemName::Dgs).rules.len(), 1);
    }

    #[test]
    fn names_parse() {
        assert_eq!("dit".parse::<SystemName>().unwrap(), SystemName::Dit);
        assert_eq!("DIT+".parse::<SystemName>().unwrap(), SystemName::DitPlus);
        assert_eq!(
            "dgsplus".parse::<SystemName>().unwrap(),
            SystemName::DgsPlus
        );
        assert!("group".parse::<SystemName>().is_err());
        assert!(system_by_name("nope").is_err());
    }

    #[test]
    fn apply_examples() {
        let dit = make_system(SystemName::Dit);
        let ax6 = dit.rule("ax6").unwrap();
        let ax7 = dit.rule("ax7").unwrap();
        assert_eq!(
            apply_rule(&w("z y y"), ax7, 0, Direction::Lr, None, 16).unwrap(),
            w("x y")
        );
        assert_eq!(
            apply_rule(&w("x y"), ax6, 0, Direction::Lr, None, 16).unwrap(),
            w("y")
        );
        let dgs = make_system(SystemName::Dgs);
        let ax8 = dgs.rule("ax8").unwrap();
        assert_eq!(
            apply_rule(&w("e a"), ax8, 0, Direction::Lr, None, 16).unwrap(),
            w("a")
        );
    }

    #[test]
    fn apply_errors() {
        let dit = make_system(SystemName::Dit);
        let ax7 = dit.rule("ax7").unwrap();
        assert_eq!(
            apply_rule(&w("z y y"), ax7, 1, Direction::Lr, None, 16),
            Err(RewriteError::NoMatch(1))
        );
        assert_eq!(
            apply_rule(&w("x x"), ax7, 0, Direction::Rl, None, 2),
            Err(RewriteError::TooLong { len: 3, max: 2 })
        );
        let dgss = make_system(SystemName::Dgss);
        let ax8 = dgss.rule("ax8").unwrap();
        let lrxr = dgss.rule("Lrxr").unwrap();
        let cancel = dgss.rule("ax9a").unwrap();
        assert_eq!(
            apply_rule(&w("e"), ax8, 0, Direction::Lr, None, 16),
            Err(RewriteError::EmptyWord)
        );
        // left deletion needs a right neighbour, right deletion a left one
        assert_eq!(
            apply_rule(&w("a e"), ax8, 1, Direction::Lr, None, 16),
            Err(RewriteError::NoMatch(1))
        );
        assert_eq!(
            apply_rule(&w("a e"), lrxr, 1, Direction::Lr, None, 16).unwrap(),
            w("a")
        );
        assert_eq!(
            apply_rule(&w("e a"), lrxr, 0, Direction::Lr, None, 16),
            Err(RewriteError::NoMatch(0))
        );
        assert_eq!(
            apply_rule(&w("a a'"), cancel, 0, Direction::Lr, None, 16),
            Err(RewriteError::EmptyWord)
        );
        assert_eq!(
            apply_rule(&w("a"), cancel, 0, Direction::Rl, None, 16),
            Err(RewriteError::MissingFill)
        );
        let b = Atom::named("b");
        assert_eq!(
            apply_rule(&w("a"), cancel, 1, Direction::Rl, Some(&b), 16).unwrap(),
            w("a b b'")
        );
        assert_eq!(
            apply_rule(&w("b' b a"), cancel, 0, Direction::Lr, None, 16).unwrap(),
            w("a")
        );
    }

    #[test]
    fn identity_insertion_sides() {
        let dgs = make_system(SystemName::DgsPlus);
        let ax8 = dgs.rule("ax8").unwrap();
        let lrxr = dgs.rule("Lrxr").unwrap();
        assert_eq!(
            apply_rule(&w("a"), ax8, 0, Direction::Rl, None, 16).unwrap(),
            w("e a")
        );
        assert_eq!(
            apply_rule(&w("a"), ax8, 1, Direction::Rl, None, 16),
            Err(RewriteError::NoMatch(1))
        );
        assert_eq!(
            apply_rule(&w("a"), lrxr, 1, Direction::Rl, None, 16).unwrap(),
            w("a e")
        );
        assert_eq!(
            apply_rule(&w("a"), lrxr, 0, Direction::Rl, None, 16),
            Err(RewriteError::NoMatch(0))
        );
    }
}
