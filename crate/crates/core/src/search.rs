//! Bounded equational proof search.
//!
//! Words are encoded over a small per-problem alphabet and explored by
//! bidirectional breadth-first search from both sides of the goal. A
//! normalization pass with length-decreasing orientations runs first and
//! settles goals whose sides share a normal form.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::proof::{Proof, ProofStep};
use crate::rules::{
    apply_rule, hypothesis_rules, Direction, Equation, Rule, RuleKind, RuleSystem, Side,
};
use crate::term::{Atom, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_word_len: usize,
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_word_len: 16,
            max_nodes: 1_000_000,
            max_depth: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bounds must be positive: {0:?}")]
    InvalidConfig(SearchConfig),
    #[error("goal side longer than max_word_len {0}")]
    GoalTooLong(usize),
    #[error("inverse marks are not allowed under {0}")]
    InverseMarks(crate::rules::SystemName),
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_word_len == 0 || self.max_nodes == 0 || self.max_depth == 0 {
            return Err(SearchError::InvalidConfig(*self));
        }
        Ok(())
    }
}

/// The bound that stopped an unsuccessful search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Nodes,
    Depth,
    WordLength,
    /// Both sides' reachable sets were exhausted: the sides are provably unequal.
    None,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Nodes => "max-nodes",
            Bound::Depth => "max-depth",
            Bound::WordLength => "max-word-len",
            Bound::None => "none (search space exhausted)",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: usize,
    pub discovered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { proof: Proof, stats: SearchStats },
    NotFound { stats: SearchStats, bound: Bound },
}

impl SearchOutcome {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            SearchOutcome::Found { proof, .. } => Some(proof),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::NotFound { stats, .. } => *stats,
        }
    }
}

type Code = u16;

#[derive(Debug, Clone)]
enum Compiled {
    Ground { lhs: Vec<Code>, rhs: Vec<Code> },
    Identity { atom: Code, side: Side },
    Cancel,
}

#[derive(Debug, Clone, Copy)]
struct Move {
    rule: u16,
    dir: Direction,
    pos: u16,
}

/// A rule set compiled against a fixed alphabet.
struct Rewriter {
    alphabet: Vec<Atom>,
    codes: HashMap<Atom, Code>,
    inverse: Vec<Code>,
    /// Atoms that may open an inserted cancelling pair.
    fills: Vec<Code>,
    ids: Vec<String>,
    rules: Vec<Compiled>,
    max_len: usize,
}

impl Rewriter {
    fn new<'a>(
        system: &RuleSystem,
        hyps: &[Equation],
        words: impl IntoIterator<Item = &'a Word>,
        max_len: usize,
    ) -> Self {
        let mut all: Vec<Rule> = system.rules.clone();
        all.extend(hypothesis_rules(hyps));
        all.sort_by(|a, b| a.id.cmp(&b.id));

        fn push_into(atoms: &mut Vec<Atom>, a: &Atom) {
            if !atoms.contains(a) {
                atoms.push(a.clone());
            }
        }
        let mut atoms: Vec<Atom> = Vec::new();
        let mut push = |a: &Atom| push_into(&mut atoms, a);
        for w in words {
            w.atoms().iter().for_each(&mut push);
        }
        for r in &all {
            match &r.kind {
                RuleKind::Ground { lhs, rhs } => {
                    lhs.atoms().iter().chain(rhs.atoms()).for_each(&mut push)
                }
                RuleKind::IdentityElim { identity, .. } => push(identity),
                RuleKind::InverseCancel => {}
            }
        }
        let cancel = system.allows_inverses();
        let identity = system.identity().cloned();
        if cancel {
            let snapshot = atoms.clone();
            for a in &snapshot {
                if Some(a) != identity.as_ref() {
                    push_into(&mut atoms, &a.flipped());
                }
            }
        }
        let codes: HashMap<Atom, Code> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i as Code))
            .collect();
        let inverse = atoms
            .iter()
            .map(|a| codes.get(&a.flipped()).copied().unwrap_or(Code::MAX))
            .collect();
        let fills = if cancel {
            (0..atoms.len() as Code)
                .filter(|&c| Some(&atoms[c as usize]) != identity.as_ref())
                .collect()
        } else {
            Vec::new()
        };
        let encode = |w: &Word| w.atoms().iter().map(|a| codes[a]).collect::<Vec<_>>();
        let rules = all
            .iter()
            .map(|r| match &r.kind {
                RuleKind::Ground { lhs, rhs } => Compiled::Ground {
                    lhs: encode(lhs),
                    rhs: encode(rhs),
                },
                RuleKind::IdentityElim { identity, side } => Compiled::Identity {
                    atom: codes[identity],
                    side: *side,
                },
                RuleKind::InverseCancel => Compiled::Cancel,
            })
            .collect();
        Rewriter {
            ids: all.into_iter().map(|r| r.id).collect(),
            alphabet: atoms,
            codes,
            inverse,
            fills,
            rules,
            max_len,
        }
    }

    fn encode(&self, w: &Word) -> Vec<Code> {
        w.atoms().iter().map(|a| self.codes[a]).collect()
    }

    fn decode(&self, w: &[Code]) -> Word {
        Word::new(
            w.iter()
                .map(|&c| self.alphabet[c as usize].clone())
                .collect(),
        )
        .expect("non-empty")
    }

    /// Visits every one-step rewrite of `w`, position-major then rule id then
    /// direction. Returns whether some rewrite was dropped for length.
    fn for_each_neighbor(
        &self,
        w: &[Code],
        mut visit: impl FnMut(Vec<Code>, Move) -> bool,
    ) -> bool {
        let n = w.len();
        let mut clipped = false;
        let mut emit = |out: Vec<Code>, mv: Move, clipped: &mut bool| -> bool {
            if out.len() > self.max_len {
                *clipped = true;
                true
            } else {
                visit(out, mv)
            }
        };
        let splice = |pos: usize, del: usize, ins: &[Code]| {
            let mut out = Vec::with_capacity(n - del + ins.len());
            out.extend_from_slice(&w[..pos]);
            out.extend_from_slice(ins);
            out.extend_from_slice(&w[pos + del..]);
            out
        };
        for pos in 0..=n {
            for (ri, rule) in self.rules.iter().enumerate() {
                for dir in [Direction::Lr, Direction::Rl] {
                    let mv = Move {
                        rule: ri as u16,
                        dir,
                        pos: pos as u16,
                    };
                    match rule {
                        Compiled::Ground { lhs, rhs } => {
                            let (from, to) = match dir {
                                Direction::Lr => (lhs, rhs),
                                Direction::Rl => (rhs, lhs),
                            };
                            if pos + from.len() <= n
                                && w[pos..pos + from.len()] == from[..]
                                && !emit(splice(pos, from.len(), to), mv, &mut clipped)
                            {
                                return clipped;
                            }
                        }
                        Compiled::Identity { atom, side } => {
                            let ok = match dir {
                                Direction::Lr => {
                                    pos < n
                                        && w[pos] == *atom
                                        && n >= 2
                                        && match side {
                                            Side::Left => pos + 1 < n,
                                            Side::Right => pos >= 1,
                                        }
                                }
                                Direction::Rl => match side {
                                    Side::Left => pos < n,
                                    Side::Right => pos >= 1,
                                },
                            };
                            if ok {
                                let out = match dir {
                                    Direction::Lr => splice(pos, 1, &[]),
                                    Direction::Rl => splice(pos, 0, &[*atom]),
                                };
                                if !emit(out, mv, &mut clipped) {
                                    return clipped;
                                }
                            }
                        }
                        Compiled::Cancel => match dir {
                            Direction::Lr => {
                                if pos + 1 < n
                                    && n > 2
                                    && self.inverse[w[pos] as usize] == w[pos + 1]
                                    && !emit(splice(pos, 2, &[]), mv, &mut clipped)
                                {
                                    return clipped;
                                }
                            }
                            Direction::Rl => {
                                for &a in &self.fills {
                                    let pair = [a, self.inverse[a as usize]];
                                    if !emit(splice(pos, 0, &pair), mv, &mut clipped) {
                                        return clipped;
                                    }
                                }
                            }
                        },
                    }
                }
            }
        }
        clipped
    }

    fn step(&self, mv: Move, result: &[Code]) -> ProofStep {
        ProofStep {
            rule: self.ids[mv.rule as usize].clone(),
            dir: mv.dir,
            pos: mv.pos as usize,
            result: self.decode(result),
        }
    }
}

/// All distinct one-step rewrites of `w` under the system and hypotheses
/// (both directions, all positions), excluding `w` itself.
pub fn neighbors(
    w: &Word,
    system: &RuleSystem,
    hyps: &[Equation],
    max_len: usize,
) -> Vec<(Word, ProofStep)> {
    let rw = Rewriter::new(system, hyps, [w], max_len);
    let start = rw.encode(w);
    let mut out = Vec::new();
    rw.for_each_neighbor(&start, |next, mv| {
        if next != start {
            let step = rw.step(mv, &next);
            out.push((step.result.clone(), step));
        }
        true
    });
    out
}

/// Orientation used by normalization: toward the shorter side, ties toward
/// the lexicographically smaller printed form.
fn oriented(rule: &Rule) -> Option<Direction> {
    match &rule.kind {
        RuleKind::Ground { lhs, rhs } => {
            let l = (lhs.len(), lhs.to_string());
            let r = (rhs.len(), rhs.to_string());
            match l.cmp(&r) {
                std::cmp::Ordering::Greater => Some(Direction::Lr),
                std::cmp::Ordering::Less => Some(Direction::Rl),
                std::cmp::Ordering::Equal => None,
            }
        }
        RuleKind::IdentityElim { .. } | RuleKind::InverseCancel => Some(Direction::Lr),
    }
}

const NORMALIZE_STEP_CAP: usize = 100_000;

/// Leftmost reduction with the oriented rules. Returns the normal form and
/// the steps reaching it, or `None` if the step cap is hit.
pub fn normalize(
    w: &Word,
    system: &RuleSystem,
    hyps: &[Equation],
) -> Option<(Word, Vec<ProofStep>)> {
    let mut rules: Vec<(Rule, Direction)> = system
        .rules
        .iter()
        .cloned()
        .chain(hypothesis_rules(hyps))
        .filter_map(|r| oriented(&r).map(|d| (r, d)))
        .collect();
    rules.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    let mut current = w.clone();
    let mut steps = Vec::new();
    'outer: while steps.len() < NORMALIZE_STEP_CAP {
        for pos in 0..current.len() {
            for (rule, dir) in &rules {
                if let Ok(next) = apply_rule(&current, rule, pos, *dir, None, usize::MAX) {
                    steps.push(ProofStep {
                        rule: rule.id.clone(),
                        dir: *dir,
                        pos,
                        result: next.clone(),
                    });
                    current = next;
                    continue 'outer;
                }
            }
        }
        return Some((current, steps));
    }
    None
}

#[derive(Default)]
struct Frontier {
    words: Vec<Vec<Code>>,
    parent: Vec<Option<(usize, Move)>>,
    index: HashMap<Vec<Code>, usize>,
    level: Vec<usize>,
    depth: usize,
}

impl Frontier {
    fn rooted(w: Vec<Code>) -> Self {
        let mut f = Frontier::default();
        f.index.insert(w.clone(), 0);
        f.words.push(w);
        f.parent.push(None);
        f.level.push(0);
        f
    }

    /// Steps from the root to node `i`, in root-to-node order.
    fn path_from_root(&self, rw: &Rewriter, mut i: usize) -> Vec<ProofStep> {
        let mut steps = Vec::new();
        while let Some((p, mv)) = self.parent[i] {
            steps.push(rw.step(mv, &self.words[i]));
            i = p;
        }
        steps.reverse();
        steps
    }

    /// Steps from node `i` back to the root, undoing each recorded move.
    fn path_to_root(&self, rw: &Rewriter, mut i: usize) -> Vec<ProofStep> {
        let mut steps = Vec::new();
        while let Some((p, mv)) = self.parent[i] {
            let back = Move {
                dir: mv.dir.flip(),
                ..mv
            };
            steps.push(rw.step(back, &self.words[p]));
            i = p;
        }
        steps
    }
}

fn check_words(system: &RuleSystem, words: &[&Word]) -> Result<(), SearchError> {
    if !system.allows_inverses() && words.iter().any(|w| w.has_inverted()) {
        return Err(SearchError::InverseMarks(system.name));
    }
    Ok(())
}

/// Searches for a proof of `goal` from the system's rules and the hypotheses.
pub fn prove_equal(
    goal: &Equation,
    system: &RuleSystem,
    hyps: &[Equation],
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    config.validate()?;
    let mut all_words: Vec<&Word> = vec![&goal.lhs, &goal.rhs];
    all_words.extend(hyps.iter().flat_map(|h| [&h.lhs, &h.rhs]));
    check_words(system, &all_words)?;
    if goal.lhs.len() > config.max_word_len || goal.rhs.len() > config.max_word_len {
        return Err(SearchError::GoalTooLong(config.max_word_len));
    }
    let found = |steps: Vec<ProofStep>, stats| SearchOutcome::Found {
        proof: Proof {
            system: system.name,
            hypotheses: hyps.to_vec(),
            goal: goal.clone(),
            steps,
        },
        stats,
    };
    if goal.lhs == goal.rhs {
        return Ok(found(Vec::new(), SearchStats::default()));
    }
    if let (Some((nl, sl)), Some((nr, sr))) = (
        normalize(&goal.lhs, system, hyps),
        normalize(&goal.rhs, system, hyps),
    ) {
        if nl == nr && sl.len() + sr.len() <= config.max_depth {
            let back = Proof {
                system: system.name,
                hypotheses: hyps.to_vec(),
                goal: Equation::new(goal.rhs.clone(), nr),
                steps: sr,
            }
            .reversed();
            let mut steps = sl;
            steps.extend(back.steps);
            return Ok(found(steps, SearchStats::default()));
        }
    }

    let rw = Rewriter::new(system, hyps, all_words, config.max_word_len);
    let mut sides = [
        Frontier::rooted(rw.encode(&goal.lhs)),
        Frontier::rooted(rw.encode(&goal.rhs)),
    ];
    let mut stats = SearchStats {
        expanded: 0,
        discovered: 2,
    };
    let mut clipped = false;
    loop {
        if sides[0].level.is_empty() || sides[1].level.is_empty() {
            let bound = if clipped {
                Bound::WordLength
            } else {
                Bound::None
            };
            return Ok(SearchOutcome::NotFound { stats, bound });
        }
        if sides[0].depth + sides[1].depth + 1 > config.max_depth {
            return Ok(SearchOutcome::NotFound {
                stats,
                bound: Bound::Depth,
            });
        }
        let s = if sides[0].level.len() <= sides[1].level.len() {
            0
        } else {
            1
        };
        let (a, b) = sides.split_at_mut(1);
        let (this, other) = if s == 0 {
            (&mut a[0], &b[0])
        } else {
            (&mut b[0], &a[0])
        };
        let level = std::mem::take(&mut this.level);
        let mut next_level = Vec::new();
        let mut meeting: Option<(usize, Move, usize)> = None;
        let mut out_of_nodes = false;
        for &i in &level {
            stats.expanded += 1;
            let word = this.words[i].clone();
            clipped |= rw.for_each_neighbor(&word, |next, mv| {
                if let Some(&j) = other.index.get(&next) {
                    meeting = Some((i, mv, j));
                    return false;
                }
                if this.index.contains_key(&next) {
                    return true;
                }
                if stats.discovered >= config.max_nodes {
                    out_of_nodes = true;
                    return false;
                }
                let id = this.words.len();
                this.index.insert(next.clone(), id);
                this.words.push(next);
                this.parent.push(Some((i, mv)));
                next_level.push(id);
                stats.discovered += 1;
                true
            });
            if meeting.is_some() || out_of_nodes {
                break;
            }
        }
        if let Some((i, mv, j)) = meeting {
            let other_word = other.words[j].clone();
            let steps = if s == 0 {
                let mut steps = this.path_from_root(&rw, i);
                steps.push(rw.step(mv, &other_word));
                steps.extend(other.path_to_root(&rw, j));
                steps
            } else {
                let mut steps = other.path_from_root(&rw, j);
                let back = Move {
                    dir: mv.dir.flip(),
                    ..mv
                };
                steps.push(rw.step(back, &this.words[i]));
                steps.extend(this.path_to_root(&rw, i));
                steps
            };
            return Ok(found(steps, stats));
        }
        if out_of_nodes {
            return Ok(SearchOutcome::NotFound {
                stats,
                bound: Bound::Nodes,
            });
        }
        this.level = next_level;
        this.depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;
    use crate::rules::{make_system, SystemName};
    use crate::term::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn eq(s: &str) -> Equation {
        s.parse().unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let dit = make_system(SystemName::Dit);
        let ns = neighbors(&w("z y"), &dit, &[], 16);
        assert!(ns.iter().any(|(word, s)| *word == w("x")
            && s.rule == "ax7"
            && s.dir == Direction::Lr
            && s.pos == 0));
        let ns = neighbors(&w("y"), &dit, &[], 16);
        assert!(ns.iter().any(|(word, s)| *word == w("x y")
            && s.rule == "ax6"
            && s.dir == Direction::Rl
            && s.pos == 0));
        let ns = neighbors(&w("x"), &dit, &[eq("x = z y")], 16);
        assert!(ns
            .iter()
            .any(|(word, s)| *word == w("z y") && s.rule == "h0" && s.dir == Direction::Lr));
    }

    #[test]
    fn neighbors_are_distinct_and_ordered() {
        let dit = make_system(SystemName::DitPlus);
        let ns = neighbors(&w("z y y"), &dit, &[], 16);
        let steps: std::collections::HashSet<_> = ns
            .iter()
            .map(|(_, s)| (s.rule.clone(), s.dir, s.pos))
            .collect();
        assert_eq!(steps.len(), ns.len());
        assert!(ns.iter().all(|(word, _)| *word != w("z y y")));
        let positions: Vec<_> = ns.iter().map(|(_, s)| s.pos).collect();
        let mut sorted = positions.clone();
        sorted.sort();
        assert_eq!(positions, sorted);
    }

    #[test]
    fn neighbors_respect_length_bound() {
        let dit = make_system(SystemName::Dit);
        assert!(neighbors(&w("y y"), &dit, &[], 2)
            .iter()
            .all(|(word, _)| word.len() <= 2));
    }

    #[test]
    fn one_step_ax7() {
        let dit = make_system(SystemName::Dit);
        let out = prove_equal(&eq("z y = x"), &dit, &[], &SearchConfig::default()).unwrap();
        let proof = out.proof().unwrap();
        assert_eq!(proof.len(), 1);
        assert_eq!(proof.steps[0].rule, "ax7");
        assert_eq!(check_proof(proof), Ok(()));
    }

    #[test]
    fn reflexivity_is_empty() {
        let dgss = make_system(SystemName::Dgss);
        let out = prove_equal(&eq("a = a"), &dgss, &[], &SearchConfig::default()).unwrap();
        assert!(out.proof().unwrap().is_empty());
    }

    #[test]
    fn er_case_five() {
        let sys = make_system(SystemName::DitPlus);
        let hyps = [eq("x y = z y")];
        let out = prove_equal(&eq("x = z"), &sys, &hyps, &SearchConfig::default()).unwrap();
        let proof = out.proof().expect("proof exists");
        assert_eq!(check_proof(proof), Ok(()));
        assert!(proof.len() <= 30);
    }

    #[test]
    fn backward_meeting_reconstructs() {
        // forces the goal's right side to be expanded first
        let sys = make_system(SystemName::DitPlus);
        let out = prove_equal(&eq("x y y = z y y y"), &sys, &[], &SearchConfig::default()).unwrap();
        assert_eq!(check_proof(out.proof().unwrap()), Ok(()));
    }

    #[test]
    fn plain_dit_separates_zx_from_z() {
        // DIT is convergent (no overlaps), so distinct normal forms refute the equation.
        let dit = make_system(SystemName::Dit);
        let (a, _) = normalize(&w("z x"), &dit, &[]).unwrap();
        let (b, _) = normalize(&w("z"), &dit, &[]).unwrap();
        assert_ne!(a, b);
        let cfg = SearchConfig {
            max_word_len: 6,
            max_nodes: 50_000,
            max_depth: 30,
        };
        let out = prove_equal(&eq("z x = z"), &dit, &[], &cfg).unwrap();
        assert!(out.proof().is_none());
    }

    #[test]
    fn exhausted_space_reports_no_bound() {
        let dgs = make_system(SystemName::Dgss);
        let cfg = SearchConfig {
            max_word_len: 3,
            max_nodes: 100_000,
            max_depth: 30,
        };
        let out = prove_equal(&eq("a = b"), &dgs, &[], &cfg).unwrap();
        assert!(matches!(
            out,
            SearchOutcome::NotFound {
                bound: Bound::WordLength,
                ..
            }
        ));
        let dit = make_system(SystemName::Dit);
        let tiny = SearchConfig {
            max_word_len: 1,
            max_nodes: 10,
            max_depth: 5,
        };
        let out = prove_equal(&eq("a = b"), &dit, &[], &tiny).unwrap();
        assert!(matches!(
            out,
            SearchOutcome::NotFound {
                bound: Bound::None,
                ..
            }
        ));
    }

    #[test]
    fn node_and_depth_bounds() {
        let sys = make_system(SystemName::DitPlus);
        let small = SearchConfig {
            max_word_len: 16,
            max_nodes: 3,
            max_depth: 30,
        };
        let out = prove_equal(&eq("x = z"), &sys, &[eq("x y = z y")], &small).unwrap();
        assert!(matches!(
            out,
            SearchOutcome::NotFound {
                bound: Bound::Nodes,
                ..
            }
        ));
        let shallow = SearchConfig {
            max_depth: 1,
            ..SearchConfig::default()
        };
        let out = prove_equal(&eq("x = z"), &sys, &[eq("x y = z y")], &shallow).unwrap();
        assert!(matches!(
            out,
            SearchOutcome::NotFound {
                bound: Bound::Depth,
                ..
            }
        ));
    }

    #[test]
    fn invalid_config() {
        let sys = make_system(SystemName::Dit);
        let bad = SearchConfig {
            max_nodes: 0,
            ..SearchConfig::default()
        };
        assert!(matches!(
            prove_equal(&eq("x = x"), &sys, &[], &bad),
            Err(SearchError::InvalidConfig(_))
        ));
        assert!(matches!(
            prove_equal(&eq("x' = x"), &sys, &[], &SearchConfig::default()),
            Err(SearchError::InverseMarks(_))
        ));
    }

    #[test]
    fn dgss_search_uses_cancellation() {
        let sys = make_system(SystemName::Dgss);
        let out = prove_equal(&eq("a b b' = e a"), &sys, &[], &SearchConfig::default()).unwrap();
        assert_eq!(check_proof(out.proof().unwrap()), Ok(()));
        let out = prove_equal(&eq("a = a' a a"), &sys, &[], &SearchConfig::default()).unwrap();
        assert_eq!(check_proof(out.proof().unwrap()), Ok(()));
    }
}
