#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use relcalc::models::Model;
use relcalc::proof::{check_proof, Proof};
use relcalc::rules::{hypothesis_id, make_system, SystemName};
use relcalc::suites::{run_suite, SuiteId};

pub type TableKey = (Vec<usize>, BTreeMap<String, usize>);

fn assoc(t: &[usize], n: usize) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            for c in 0..n {
                if t[ab * n + c] != t[a * n + t[b * n + c]] {
                    return false;
                }
            }
        }
    }
    true
}

/// Axioms read straight off their statements, no shared code with the library.
pub fn naive_satisfies(
    t: &[usize],
    n: usize,
    system: SystemName,
    d: &BTreeMap<String, usize>,
) -> bool {
    let op = |a: usize, b: usize| t[a * n + b];
    if !assoc(t, n) {
        return false;
    }
    use SystemName::*;
    match system {
        Dit | DitPlus | Dits => {
            let (x, y, z) = (d["x"], d["y"], d["z"]);
            if x == y || y == z || x == z || op(x, y) != y || op(z, y) != x {
                return false;
            }
            if matches!(system, DitPlus | Dits) && op(z, x) != z {
                return false;
            }
            system != Dits || op(y, z) == op(z, y)
        }
        Dgs | DgsPlus | Dgss => {
            let e = d["e"];
            (0..n).all(|a| {
                op(e, a) == a
                    && (system == Dgs || op(a, e) == a)
                    && (0..n).any(|b| op(b, a) == e && (system != Dgss || op(a, b) == e))
            })
        }
    }
}

fn designation_maps(system: SystemName, n: usize) -> Vec<BTreeMap<String, usize>> {
    let mut out = Vec::new();
    if system.is_triple() {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out.push(BTreeMap::from([
                        ("x".into(), x),
                        ("y".into(), y),
                        ("z".into(), z),
                    ]));
                }
            }
        }
    } else {
        for e in 0..n {
            out.push(BTreeMap::from([("e".into(), e)]));
        }
    }
    out
}

/// Every `n^(n*n)` table filtered through [`naive_satisfies`].
pub fn naive_models(system: SystemName, n: usize) -> BTreeSet<TableKey> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let maps = designation_maps(system, n);
    let mut out = BTreeSet::new();
    let mut t = vec![0usize; cells];
    for mut code in 0..total {
        for cell in t.iter_mut() {
            *cell = code % n;
            code /= n;
        }
        if !assoc(&t, n) {
            continue;
        }
        for d in &maps {
            if naive_satisfies(&t, n, system, d) {
                out.insert((t.clone(), d.clone()));
            }
        }
    }
    out
}

pub fn key(m: &Model) -> TableKey {
    (m.table().to_vec(), m.designated().clone())
}

/// Associativity, a two-sided identity and two-sided inverses.
pub fn is_group(t: &[usize], n: usize) -> bool {
    let op = |a: usize, b: usize| t[a * n + b];
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| op(e, a) == a && op(a, e) == a)) else {
        return false;
    };
    (0..n).all(|a| (0..n).any(|b| op(a, b) == e && op(b, a) == e)) && assoc(t, n)
}

/// Labelled group tables on `0..n`: each identity choice fixes its row and
/// column, the remaining `(n-1)^2` cells are scanned exhaustively.
pub fn textbook_group_count(n: usize) -> u64 {
    let mut count = 0;
    let free: usize = (n - 1) * (n - 1);
    for e in 0..n {
        let others: Vec<usize> = (0..n).filter(|&a| a != e).collect();
        let mut t = vec![0usize; n * n];
        for a in 0..n {
            t[e * n + a] = a;
            t[a * n + e] = a;
        }
        for mut code in 0..n.pow(free as u32) {
            for &a in &others {
                for &b in &others {
                    t[a * n + b] = code % n;
                    code /= n;
                }
            }
            if is_group(&t, n) {
                count += 1;
            }
        }
    }
    count
}

pub const PROOF_SUITES: [SuiteId; 5] = [
    SuiteId::Er,
    SuiteId::Pr01,
    SuiteId::Dits,
    SuiteId::Collapse,
    SuiteId::Dgss,
];

pub fn suite_proofs() -> Vec<Proof> {
    PROOF_SUITES
        .iter()
        .flat_map(|&s| run_suite(s).proofs().cloned().collect::<Vec<_>>())
        .collect()
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MutationTally {
    pub mutants: usize,
    pub rejected_at_step: usize,
    /// Mutants whose step still produces the recorded word: a different but
    /// valid justification, so acceptance is correct.
    pub coincident: usize,
    pub wrong: usize,
}

/// Replaces one step's rule, direction or position in every possible way.
pub fn mutate_all(p: &Proof, tally: &mut MutationTally) {
    let mut ids: Vec<String> = make_system(p.system)
        .rules
        .iter()
        .map(|r| r.id.clone())
        .collect();
    ids.extend((0..p.hypotheses.len()).map(hypothesis_id));
    ids.push("bogus".into());
    let chain: Vec<usize> = p.chain().iter().map(|w| w.len()).collect();
    for (i, step) in p.steps.iter().enumerate() {
        let mut variants = Vec::new();
        for id in ids.iter().filter(|id| **id != step.rule) {
            let mut m = p.clone();
            m.steps[i].rule = id.clone();
            variants.push(m);
        }
        let mut m = p.clone();
        m.steps[i].dir = step.dir.flip();
        variants.push(m);
        for pos in (0..=chain[i] + 1).filter(|&q| q != step.pos) {
            let mut m = p.clone();
            m.steps[i].pos = pos;
            variants.push(m);
        }
        for m in variants {
            tally.mutants += 1;
            match check_proof(&m) {
                Err(f) if f.step == i => tally.rejected_at_step += 1,
                Ok(()) => tally.coincident += 1,
                Err(_) => tally.wrong += 1,
            }
        }
    }
}
