//! Seeded generators for small knowledge bases and argument sets.
//!
//! Generated databases are stratified: every predicate has a level, rule
//! antecedents only mention lower levels than their consequents, and no
//! antecedent contains `#` or a double negation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dictionary::{DictionaryKind, Sign};
use crate::kernel::{AxiomEntry, Database, Formula, GroundLabel};
use crate::prover::Claim;

pub use rand::Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape bounds for [`random_database`].
#[derive(Clone, Copy, Debug)]
pub struct KbShape {
    pub dictionary: DictionaryKind,
    pub max_axioms: usize,
    /// Up to two constants are drawn from `k` and `m`.
    pub constants: usize,
}

impl KbShape {
    pub fn small(dictionary: DictionaryKind) -> KbShape {
        KbShape {
            dictionary,
            max_axioms: 6,
            constants: 2,
        }
    }
}

struct Pred {
    name: &'static str,
    unary: bool,
    level: u8,
}

const PREDS: [Pred; 8] = [
    Pred {
        name: "a",
        unary: false,
        level: 0,
    },
    Pred {
        name: "q",
        unary: true,
        level: 0,
    },
    Pred {
        name: "b",
        unary: false,
        level: 1,
    },
    Pred {
        name: "r",
        unary: true,
        level: 1,
    },
    Pred {
        name: "c",
        unary: false,
        level: 2,
    },
    Pred {
        name: "s",
        unary: true,
        level: 2,
    },
    Pred {
        name: "d",
        unary: false,
        level: 3,
    },
    Pred {
        name: "t",
        unary: true,
        level: 3,
    },
];

const CONSTANTS: [&str; 2] = ["k", "m"];

fn random_sign(rng: &mut SeededRng, dictionary: DictionaryKind) -> Sign {
    match dictionary {
        DictionaryKind::Numeric => {
            let x: f64 = if rng.gen_bool(0.15) {
                1.0
            } else {
                rng.gen_range(0.05..1.0)
            };
            Sign::degree(x).expect("degree in range")
        }
        d => {
            let positives: Vec<Sign> = d
                .elements()
                .iter()
                .copied()
                .filter(|s| s.is_positive())
                .collect();
            *positives
                .choose(rng)
                .expect("dictionary has a positive sign")
        }
    }
}

struct Gen<'r> {
    rng: &'r mut SeededRng,
    constants: usize,
}

impl Gen<'_> {
    /// An atom at exactly `level`, ground or over `X`.
    fn atom(&mut self, level: u8, schematic: bool) -> Formula {
        let choices: Vec<&Pred> = PREDS.iter().filter(|p| p.level == level).collect();
        let pred = *choices.choose(self.rng).expect("two predicates per level");
        if !pred.unary {
            Formula::prop(pred.name)
        } else if schematic {
            Formula::pred(pred.name, &["X"])
        } else {
            let c = CONSTANTS[self.rng.gen_range(0..self.constants.max(1))];
            Formula::pred(pred.name, &[c])
        }
    }

    fn head(&mut self, level: u8, schematic: bool) -> Formula {
        let atom = self.atom(level, schematic);
        if self.rng.gen_bool(0.3) {
            Formula::not(atom)
        } else {
            atom
        }
    }

    fn body(&mut self, below: u8, schematic: bool) -> Formula {
        let first_level = self.rng.gen_range(0..below);
        let first = self.atom(first_level, schematic);
        if self.rng.gen_bool(0.25) {
            let second_level = self.rng.gen_range(0..below);
            Formula::and(first, self.atom(second_level, schematic))
        } else {
            first
        }
    }

    fn axiom(&mut self) -> Formula {
        let schematic = self.rng.gen_bool(0.4);
        match self.rng.gen_range(0..10) {
            0..=3 => {
                let level = self.rng.gen_range(0..3);
                self.atom(level, false)
            }
            4 => {
                let level = self.rng.gen_range(0..3);
                Formula::not(self.atom(level, false))
            }
            5..=8 => {
                let level = self.rng.gen_range(1..4);
                let body = self.body(level, schematic);
                Formula::implies(body, self.head(level, schematic))
            }
            _ => {
                let level = self.rng.gen_range(2..4);
                let (la, lb) = (self.rng.gen_range(0..level), self.rng.gen_range(0..level));
                let a = self.atom(la, schematic);
                let b = self.atom(lb, schematic);
                Formula::implies(a, Formula::implies(b, self.head(level, schematic)))
            }
        }
    }
}

/// A random stratified database with between one and `shape.max_axioms`
/// axioms labelled `k0`, `k1`, ...
pub fn random_database(rng: &mut SeededRng, shape: KbShape) -> Database {
    let n = rng.gen_range(1..=shape.max_axioms);
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let formula = Gen {
            rng: &mut *rng,
            constants: shape.constants,
        }
        .axiom();
        let sign = random_sign(rng, shape.dictionary);
        entries.push(AxiomEntry::new(&format!("k{i}"), formula, sign));
    }
    Database::new(shape.dictionary, entries).expect("generated axioms are well formed")
}

/// A random set of arguments for `p` with distinct single-label grounds
/// `a0`, `a1`, ... and signs drawn from `signs`.
pub fn random_claims(rng: &mut SeededRng, p: &Formula, signs: &[Sign], max: usize) -> Vec<Claim> {
    let n = rng.gen_range(0..=max);
    (0..n)
        .map(|i| {
            Claim::new(
                p.clone(),
                BTreeSet::from([GroundLabel::plain(&format!("a{i}"))]),
                *signs.choose(rng).expect("non-empty sign pool"),
            )
        })
        .collect()
}

/// Random positive signs of a dictionary. Numeric pools include 0 and 1.
pub fn positive_signs(rng: &mut SeededRng, dictionary: DictionaryKind, count: usize) -> Vec<Sign> {
    match dictionary {
        DictionaryKind::Numeric => {
            let mut v = vec![Sign::degree(0.0).unwrap(), Sign::degree(1.0).unwrap()];
            v.extend((0..count).map(|_| random_sign(rng, dictionary)));
            v
        }
        d => d
            .elements()
            .iter()
            .copied()
            .filter(|s| s.is_positive())
            .collect(),
    }
}
