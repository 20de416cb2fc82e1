//! Equality proofs as chains of positioned rewrite steps, their checker, and
//! the JSON proof-script format.
//!
//! Reflexivity is the empty chain, symmetry is [`Proof::reversed`], and
//! transitivity is [`Proof::then`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::{
    apply_rule, hypothesis_rules, make_system, Direction, Equation, RewriteError, Rule, SystemName,
};
use crate::term::{parse_word, TermError, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub rule: String,
    pub dir: Direction,
    pub pos: usize,
    pub result: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub system: SystemName,
    pub hypotheses: Vec<Equation>,
    pub goal: Equation,
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The words visited, starting with the goal's left side.
    pub fn chain(&self) -> Vec<&Word> {
        std::iter::once(&self.goal.lhs)
            .chain(self.steps.iter().map(|s| &s.result))
            .collect()
    }

    /// A proof of `rhs = lhs` running the same steps backwards.
    pub fn reversed(&self) -> Proof {
        let chain = self.chain();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, s)| ProofStep {
                rule: s.rule.clone(),
                dir: s.dir.flip(),
                pos: s.pos,
                result: chain[i].clone(),
            })
            .collect();
        Proof {
            system: self.system,
            hypotheses: self.hypotheses.clone(),
            goal: self.goal.flipped(),
            steps,
        }
    }

    /// Chains `self: a = b` with `next: b = c` into `a = c`.
    ///
    /// Returns `None` when the middle words differ or the contexts disagree.
    pub fn then(&self, next: &Proof) -> Option<Proof> {
        if self.goal.rhs != next.goal.lhs
            || self.system != next.system
            || self.hypotheses != next.hypotheses
        {
            return None;
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Some(Proof {
            system: self.system,
            hypotheses: self.hypotheses.clone(),
            goal: Equation::new(self.goal.lhs.clone(), next.goal.rhs.clone()),
            steps,
        })
    }

    pub fn to_script(&self) -> ProofScript {
        ProofScript {
            system: self.system.to_string(),
            hypotheses: self.hypotheses.iter().map(ToString::to_string).collect(),
            goal: self.goal.to_string(),
            steps: self
                .steps
                .iter()
                .map(|s| StepScript {
                    rule: s.rule.clone(),
                    dir: s.dir,
                    pos: s.pos,
                    result: s.result.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_script()).expect("proof script serializes")
    }

    /// Human-readable chain, one word per line with the step annotation.
    pub fn render(&self) -> String {
        let mut out = format!("  {}\n", self.goal.lhs);
        for s in &self.steps {
            out.push_str(&format!(
                "= {}    [{} {} @{}]\n",
                s.result, s.rule, s.dir, s.pos
            ));
        }
        out
    }
}

/// Serialized proof script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub system: String,
    pub hypotheses: Vec<String>,
    pub goal: String,
    pub steps: Vec<StepScript>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepScript {
    pub rule: String,
    pub dir: Direction,
    pub pos: usize,
    pub result: String,
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("malformed proof script: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    System(#[from] crate::rules::UnknownSystem),
    #[error("{what}: {source}")]
    Term {
        what: String,
        #[source]
        source: TermError,
    },
}

impl ProofScript {
    pub fn from_json(text: &str) -> Result<Self, ScriptError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_proof(&self) -> Result<Proof, ScriptError> {
        let term = |what: String| move |source| ScriptError::Term { what, source };
        let system = self.system.parse()?;
        let hypotheses = self
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| h.parse().map_err(term(format!("hypothesis {i}"))))
            .collect::<Result<Vec<Equation>, _>>()?;
        let goal = self.goal.parse().map_err(term("goal".into()))?;
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(ProofStep {
                    rule: s.rule.clone(),
                    dir: s.dir,
                    pos: s.pos,
                    result: parse_word(&s.result).map_err(term(format!("step {i} result")))?,
                })
            })
            .collect::<Result<Vec<_>, ScriptError>>()?;
        Ok(Proof {
            system,
            hypotheses,
            goal,
            steps,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckReason {
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("step yields {actual}, script claims {claimed}")]
    ResultMismatch { claimed: Word, actual: Word },
    #[error("chain ends at {last}, goal right side is {rhs}")]
    GoalMismatch { last: Word, rhs: Word },
    #[error("inverse marks are not allowed under {0}")]
    InverseMarks(SystemName),
}

/// Rejection report: index of the first failing step (the step count for a
/// goal mismatch after the last step) and the reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rejected at step {step}: {reason}")]
pub struct CheckFailure {
    pub step: usize,
    pub reason: CheckReason,
}

/// Replays every step and accepts iff the chain ends at the goal's right side.
pub fn check_proof(p: &Proof) -> Result<(), CheckFailure> {
    let system = make_system(p.system);
    let fail = |step, reason| Err(CheckFailure { step, reason });
    if !system.allows_inverses() {
        let words = p
            .hypotheses
            .iter()
            .flat_map(|h| [&h.lhs, &h.rhs])
            .chain([&p.goal.lhs, &p.goal.rhs]);
        if words.into_iter().any(Word::has_inverted) {
            return fail(0, CheckReason::InverseMarks(p.system));
        }
    }
    let hyps = hypothesis_rules(&p.hypotheses);
    let lookup =
        |id: &str| -> Option<&Rule> { system.rules.iter().chain(hyps.iter()).find(|r| r.id == id) };
    let mut current = p.goal.lhs.clone();
    for (i, step) in p.steps.iter().enumerate() {
        let Some(rule) = lookup(&step.rule) else {
            return fail(i, CheckReason::UnknownRule(step.rule.clone()));
        };
        let fill = step.result.atoms().get(step.pos);
        let next = match apply_rule(&current, rule, step.pos, step.dir, fill, usize::MAX) {
            Ok(w) => w,
            Err(e) => return fail(i, e.into()),
        };
        if next != step.result {
            return fail(
                i,
                CheckReason::ResultMismatch {
                    claimed: step.result.clone(),
                    actual: next,
                },
            );
        }
        current = next;
    }
    if current != p.goal.rhs {
        return fail(
            p.steps.len(),
            CheckReason::GoalMismatch {
                last: current,
                rhs: p.goal.rhs.clone(),
            },
        );
    }
    Ok(())
}
