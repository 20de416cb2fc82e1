use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use relcalc::dgss::equal_dgss;
use relcalc::proof::check_proof;
use relcalc::rules::{apply_rule, make_system, Direction, Equation, RuleKind, SystemName};
use relcalc::search::{neighbors, normalize, prove_equal, SearchConfig, SearchOutcome};
use relcalc::term::{Atom, Word};

fn small() -> SearchConfig {
    SearchConfig {
        max_word_len: 6,
        max_nodes: 20_000,
        max_depth: 12,
    }
}

fn triple_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!["x", "y", "z"]), 1..=max)
        .prop_map(|v| Word::from_names(&v))
}

fn group_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (prop::sample::select(vec!["a", "b", "e"]), any::<bool>()),
        1..=max,
    )
    .prop_map(|v| {
        Word::new(
            v.into_iter()
                .map(|(n, inv)| Atom::with_mark(n, inv && n != "e").unwrap())
                .collect(),
        )
        .unwrap()
    })
}

fn triple_system() -> impl Strategy<Value = SystemName> {
    prop::sample::select(vec![SystemName::Dit, SystemName::DitPlus, SystemName::Dits])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_proofs_check_and_reverse(
        l in triple_word(4), r in triple_word(4), sys in triple_system(),
        hyp in prop::option::of((triple_word(2), triple_word(2))),
    ) {
        let hyps: Vec<Equation> = hyp.into_iter().map(|(a, b)| Equation::new(a, b)).collect();
        let out = prove_equal(&Equation::new(l, r), &make_system(sys), &hyps, &small()).unwrap();
        if let SearchOutcome::Found { proof, .. } = out {
            prop_assert_eq!(check_proof(&proof), Ok(()));
            prop_assert_eq!(check_proof(&proof.reversed()), Ok(()));
            // extra hypotheses never invalidate a proof
            let mut wider = proof.clone();
            wider.hypotheses.push(Equation::new(Word::from_names(&["x"]), Word::from_names(&["z", "z"])));
            prop_assert_eq!(check_proof(&wider), Ok(()));
        }
    }

    #[test]
    fn dgss_search_agrees_with_decider(l in group_word(3), r in group_word(3)) {
        let out = prove_equal(&Equation::new(l.clone(), r.clone()), &make_system(SystemName::Dgss), &[], &small()).unwrap();
        match out {
            SearchOutcome::Found { proof, .. } => {
                prop_assert!(equal_dgss(&l, &r));
                prop_assert_eq!(check_proof(&proof), Ok(()));
            }
            SearchOutcome::NotFound { .. } => prop_assert!(!equal_dgss(&l, &r)),
        }
    }

    #[test]
    fn steps_only_touch_their_span(w in triple_word(6), sys in triple_system()) {
        for (next, step) in neighbors(&w, &make_system(sys), &[], 16) {
            let rule = make_system(sys).rule(&step.rule).unwrap().clone();
            let RuleKind::Ground { lhs, rhs } = &rule.kind else { unreachable!() };
            let (from, to) = match step.dir {
                Direction::Lr => (lhs, rhs),
                Direction::Rl => (rhs, lhs),
            };
            let (a, b) = (w.atoms(), next.atoms());
            prop_assert_eq!(&a[..step.pos], &b[..step.pos]);
            prop_assert_eq!(&a[step.pos + from.len()..], &b[step.pos + to.len()..]);
            prop_assert_eq!(&b[step.pos..step.pos + to.len()], to.atoms());
        }
    }
}

/// All lr-irreducible descendants of `w`, by exhaustive exploration.
fn all_normal_forms(w: &Word, sys: SystemName) -> BTreeSet<String> {
    let system = make_system(sys);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([w.clone()]);
    let mut forms = BTreeSet::new();
    while let Some(cur) = queue.pop_front() {
        if !seen.insert(cur.to_string()) {
            continue;
        }
        let mut reducible = false;
        for rule in &system.rules {
            for pos in 0..cur.len() {
                if let Ok(next) = apply_rule(&cur, rule, pos, Direction::Lr, None, 64) {
                    reducible = true;
                    queue.push_back(next);
                }
            }
        }
        if !reducible {
            forms.insert(cur.to_string());
        }
    }
    forms
}

#[test]
fn dit_plus_is_confluent_up_to_length_six() {
    let mut words = vec![Vec::<&str>::new()];
    let mut checked = 0;
    for _ in 0..6 {
        words = words
            .into_iter()
            .flat_map(|w| ["x", "y", "z"].map(|a| [w.clone(), vec![a]].concat()))
            .collect();
        for w in &words {
            let word = Word::from_names(w);
            let forms = all_normal_forms(&word, SystemName::DitPlus);
            assert_eq!(forms.len(), 1, "{word}: {forms:?}");
            let (nf, _) = normalize(&word, &make_system(SystemName::DitPlus), &[]).unwrap();
            assert_eq!(forms.into_iter().next().unwrap(), nf.to_string());
            checked += 1;
        }
    }
    assert_eq!(checked, 3 + 9 + 27 + 81 + 243 + 729);
}

#[test]
fn plain_dit_reaches_no_proof_of_zxz() {
    // evidence, not a theorem: the bounded search never connects z x and z
    let goal = Equation::new(Word::from_names(&["z", "x"]), Word::from_names(&["z"]));
    let cfg = SearchConfig {
        max_word_len: 8,
        max_nodes: 200_000,
        max_depth: 30,
    };
    let out = prove_equal(&goal, &make_system(SystemName::Dit), &[], &cfg).unwrap();
    assert!(out.proof().is_none());
}
