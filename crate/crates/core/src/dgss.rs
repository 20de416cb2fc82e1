//! Decision procedure for ground equalities of the symmetric generative system.
//!
//! With two-sided inverses written as apostrophe marks, equality over free
//! generators is the free-group word problem: delete identity atoms and
//! adjacent `a a'` / `a' a` pairs until none remain.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{Atom, Word, IDENTITY};

/// A freely reduced word. The identity is the one-atom word `[e]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.len() == 1 && is_identity(&self.0.atoms()[0])
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_identity(a: &Atom) -> bool {
    a.name() == IDENTITY
}

pub fn identity_word() -> Word {
    Word::single(Atom::named(IDENTITY))
}

fn finish(atoms: Vec<Atom>) -> ReducedWord {
    ReducedWord(Word::new(atoms).unwrap_or_else(identity_word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Single left-to-right pass with a stack.
    Leftmost,
    /// Repeatedly cancel the rightmost reducible spot.
    Rightmost,
}

pub fn free_reduce(w: &Word) -> ReducedWord {
    free_reduce_with(w, Strategy::Leftmost)
}

pub fn free_reduce_with(w: &Word, strategy: Strategy) -> ReducedWord {
    match strategy {
        Strategy::Leftmost => {
            let mut stack: Vec<Atom> = Vec::with_capacity(w.len());
            for a in w.atoms() {
                if is_identity(a) {
                    continue;
                }
                if stack.last().is_some_and(|top| top.is_inverse_pair(a)) {
                    stack.pop();
                } else {
                    stack.push(a.clone());
                }
            }
            finish(stack)
        }
        Strategy::Rightmost => {
            let mut atoms = w.atoms().to_vec();
            loop {
                let n = atoms.len();
                let spot = (0..n).rev().find_map(|i| {
                    if is_identity(&atoms[i]) {
                        Some((i, 1))
                    } else if i + 1 < n && atoms[i].is_inverse_pair(&atoms[i + 1]) {
                        Some((i, 2))
                    } else {
                        None
                    }
                });
                match spot {
                    Some((i, len)) => {
                        atoms.drain(i..i + len);
                    }
                    None => break,
                }
            }
            finish(atoms)
        }
    }
}

/// Reverses the word and flips every inverse mark; the identity stays `e`.
pub fn invert(w: &Word) -> Word {
    let atoms = w
        .atoms()
        .iter()
        .rev()
        .map(|a| {
            if is_identity(a) {
                a.clone()
            } else {
                a.flipped()
            }
        })
        .collect();
    Word::new(atoms).expect("non-empty")
}

pub fn equal_dgss(u: &Word, v: &Word) -> bool {
    free_reduce(u) == free_reduce(v)
}

/// Pass counts for the cancellation and inverse-uniqueness properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub samples: usize,
    pub seed: u64,
    pub properties: Vec<PropertyCount>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCount {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: usize,
    /// Samples where the implication's hypothesis held.
    pub nontrivial: usize,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed == self.samples)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(
                f,
                "{:<5} {}/{} ({} with hypothesis true)  {}",
                p.name, p.passed, self.samples, p.nontrivial, p.description
            )?;
        }
        Ok(())
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    alphabet: Vec<Atom>,
}

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            alphabet: Vec::new(),
        }
    }

    fn fresh_alphabet(&mut self) {
        let size = self.rng.gen_range(1..=4);
        self.alphabet = ["a", "b", "c", "d"][..size]
            .iter()
            .map(|n| Atom::named(n))
            .collect();
    }

    fn atom(&mut self) -> Atom {
        if self.rng.gen_bool(0.1) {
            return Atom::named(IDENTITY);
        }
        let a = self
            .alphabet
            .choose(&mut self.rng)
            .expect("alphabet")
            .clone();
        if self.rng.gen_bool(0.5) {
            a.flipped()
        } else {
            a
        }
    }

    fn word(&mut self) -> Word {
        let len = self.rng.gen_range(1..=6);
        Word::new((0..len).map(|_| self.atom()).collect()).expect("non-empty")
    }

    /// A word equal to `w` after padding with random cancelling material.
    fn disguise(&mut self, w: &Word) -> Word {
        let mut atoms = w.atoms().to_vec();
        for _ in 0..self.rng.gen_range(0..=3) {
            let at = self.rng.gen_range(0..=atoms.len());
            if self.rng.gen_bool(0.3) {
                atoms.insert(at, Atom::named(IDENTITY));
            } else {
                let a = self.atom();
                if is_identity(&a) {
                    atoms.insert(at, a);
                } else {
                    atoms.splice(at..at, [a.clone(), a.flipped()]);
                }
            }
        }
        Word::new(atoms).expect("non-empty")
    }

    /// Half the time an unrelated word, half the time a disguised copy.
    fn partner(&mut self, x: &Word) -> Word {
        if self.rng.gen_bool(0.5) {
            self.disguise(x)
        } else {
            self.word()
        }
    }
}

/// Checks the inverse-uniqueness and cancellation properties on `samples`
/// seeded random instances over a random generator alphabet.
pub fn verify_dgss_lemmas(samples: usize, seed: u64) -> LemmaReport {
    let e = identity_word();
    let mut s = Sampler::new(seed);
    let mut counts = [
        (
            "lm2a",
            "s x = e, t y = e, x = y => s = t (left inverse unique)",
        ),
        (
            "lm2b",
            "x s = e, y t = e, x = y => s = t (right inverse unique)",
        ),
        ("lm2c", "z x = z y = e => x = y"),
        ("lm2d", "x z = y z = e => x = y"),
        ("pr2e", "z x = z y <=> x = y"),
        ("pr2f", "x z = y z <=> x = y"),
    ]
    .map(|(name, description)| PropertyCount {
        name,
        description,
        passed: 0,
        nontrivial: 0,
    });
    let mut tally = |i: usize, hyp: bool, ok: bool| {
        counts[i].passed += ok as usize;
        counts[i].nontrivial += hyp as usize;
    };
    for _ in 0..samples {
        s.fresh_alphabet();
        let x = s.word();
        let y = s.partner(&x);
        let z = s.word();
        let xy = equal_dgss(&x, &y);

        // lm2a / lm2b: the candidate inverses are two-sided and agree on equal words
        let (sx, ty) = (s.disguise(&invert(&x)), s.disguise(&invert(&y)));
        let left = equal_dgss(&sx.concat(&x), &e) && equal_dgss(&ty.concat(&y), &e);
        let right = equal_dgss(&x.concat(&sx), &e) && equal_dgss(&y.concat(&ty), &e);
        let same = !xy || equal_dgss(&sx, &ty);
        tally(0, xy, left && same);
        tally(1, xy, right && same);

        // lm2c / lm2d: build x, y as (disguised) inverses of z half the time
        let zi = invert(&z);
        let (cx, cy) = if s.rng.gen_bool(0.5) {
            (s.disguise(&zi), s.disguise(&zi))
        } else {
            (s.partner(&zi), s.word())
        };
        let hyp_c = equal_dgss(&z.concat(&cx), &e) && equal_dgss(&z.concat(&cy), &e);
        tally(2, hyp_c, !hyp_c || equal_dgss(&cx, &cy));
        let hyp_d = equal_dgss(&cx.concat(&z), &e) && equal_dgss(&cy.concat(&z), &e);
        tally(3, hyp_d, !hyp_d || equal_dgss(&cx, &cy));

        let lhs_e = equal_dgss(&z.concat(&x), &z.concat(&y));
        tally(4, lhs_e, lhs_e == xy);
        let lhs_f = equal_dgss(&x.concat(&z), &y.concat(&z));
        tally(5, lhs_f, lhs_f == xy);
    }
    LemmaReport {
        samples,
        seed,
        properties: counts.to_vec(),
    }
}
