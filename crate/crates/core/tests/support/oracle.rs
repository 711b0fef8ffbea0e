//! Exhaustive forward-closure enumeration of normal proofs, written
//! independently of the goal-directed prover.
//!
//! Items are `(formula, open assumptions, grounds, sign, neutral)` with
//! the least proof height seen. Neutral items come from axioms,
//! assumptions and eliminations; only they may be the major premise of an
//! elimination. Introductions are restricted to formulas in the subformula
//! closure of the database instances and the queries.

use std::collections::{BTreeMap, BTreeSet};

use argue::dictionary::Sign;
use argue::kernel::{Binding, Database, Formula};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Item {
    formula: Formula,
    open: BTreeSet<Formula>,
    grounds: BTreeSet<String>,
    sign: Sign,
    neutral: bool,
}

/// `(formula, sorted grounds, sign)` as strings.
pub type Triple = (String, Vec<String>, String);

fn meet(l: Sign, m: Sign) -> Sign {
    match (l, m) {
        (Sign::Degree(a), Sign::Degree(b)) => Sign::degree(a.value() * b.value()).unwrap(),
        _ => {
            let rank = |s: Sign| match s {
                Sign::Plus => 0,
                Sign::DoublePlus => 1,
                other => panic!("no combination for {other}"),
            };
            if rank(l) <= rank(m) {
                l
            } else {
                m
            }
        }
    }
}

fn top(db: &Database) -> Sign {
    use argue::dictionary::DictionaryKind::*;
    match db.dictionary() {
        Bounded | BoundedDelta => Sign::DoublePlus,
        Generic | Delta => Sign::Plus,
        Numeric => Sign::degree(1.0).unwrap(),
    }
}

fn instances(f: &Formula, constants: &[String]) -> Vec<(Formula, Vec<String>)> {
    let vars = f.vars_in_order();
    let mut out = vec![(Binding::new(), Vec::new())];
    for v in &vars {
        out = out
            .into_iter()
            .flat_map(|(b, cs)| {
                constants.iter().map(move |c| {
                    let mut b = b.clone();
                    b.insert(v.clone(), c.clone());
                    let mut cs = cs.clone();
                    cs.push(c.clone());
                    (b, cs)
                })
            })
            .collect();
    }
    if vars.is_empty() {
        return vec![(f.normalize(), Vec::new())];
    }
    out.into_iter()
        .map(|(b, cs)| (f.normalize().substitute(&b).unwrap(), cs))
        .collect()
}

fn subformula_closure(roots: impl IntoIterator<Item = Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Formula> = roots.into_iter().collect();
    while let Some(f) = stack.pop() {
        if out.insert(f.clone()) {
            match &f {
                Formula::And(l, r) | Formula::Implies(l, r) => {
                    stack.push((**l).clone());
                    stack.push((**r).clone());
                }
                _ => {}
            }
        }
    }
    out
}

pub struct Oracle {
    items: BTreeMap<Item, usize>,
}

impl Oracle {
    /// Closes the database under the rules up to proof height `depth`.
    /// `queries` must be ground, kernel-normal and free of `|`.
    pub fn new(db: &Database, queries: &[Formula], depth: usize) -> Oracle {
        let constants: Vec<String> = db.constants().iter().cloned().collect();
        let mut axioms = Vec::new();
        for e in db.entries().iter().filter(|e| e.sign.is_positive()) {
            for (f, cs) in instances(&e.formula, &constants) {
                let label = if cs.is_empty() {
                    e.label.clone()
                } else {
                    format!("{}({})", e.label, cs.join(","))
                };
                axioms.push((f, label, e.sign));
            }
        }
        let closure = subformula_closure(
            axioms
                .iter()
                .map(|(f, _, _)| f.clone())
                .chain(queries.iter().cloned()),
        );
        let assumable: BTreeSet<Formula> = closure
            .iter()
            .filter_map(|f| match f {
                Formula::Implies(a, _) => Some((**a).clone()),
                _ => None,
            })
            .collect();

        let mut items: BTreeMap<Item, usize> = BTreeMap::new();
        for (f, label, sign) in &axioms {
            items.insert(
                Item {
                    formula: f.clone(),
                    open: BTreeSet::new(),
                    grounds: BTreeSet::from([label.clone()]),
                    sign: *sign,
                    neutral: true,
                },
                1,
            );
        }
        for a in &assumable {
            items.insert(
                Item {
                    formula: a.clone(),
                    open: BTreeSet::from([a.clone()]),
                    grounds: BTreeSet::new(),
                    sign: top(db),
                    neutral: true,
                },
                1,
            );
        }

        loop {
            let snapshot: Vec<(Item, usize)> = items.iter().map(|(i, h)| (i.clone(), *h)).collect();
            let mut fresh: Vec<(Item, usize)> = Vec::new();
            for (major, hm) in &snapshot {
                if *hm >= depth {
                    continue;
                }
                match &major.formula {
                    Formula::And(l, r) if major.neutral => {
                        for part in [l, r] {
                            fresh.push((
                                Item {
                                    formula: (**part).clone(),
                                    ..major.clone()
                                },
                                hm + 1,
                            ));
                        }
                    }
                    Formula::Implies(a, b) if major.neutral => {
                        for (minor, hn) in &snapshot {
                            if minor.formula == **a && *hn < depth {
                                fresh.push((
                                    Item {
                                        formula: (**b).clone(),
                                        open: &major.open | &minor.open,
                                        grounds: &major.grounds | &minor.grounds,
                                        sign: meet(major.sign, minor.sign),
                                        neutral: true,
                                    },
                                    hm.max(hn) + 1,
                                ));
                            }
                        }
                    }
                    _ => {}
                }
                for target in &closure {
                    match target {
                        Formula::Implies(a, b) if **b == major.formula => {
                            let mut open = major.open.clone();
                            open.remove(a);
                            fresh.push((
                                Item {
                                    formula: target.clone(),
                                    open,
                                    grounds: major.grounds.clone(),
                                    sign: major.sign,
                                    neutral: false,
                                },
                                hm + 1,
                            ));
                        }
                        Formula::And(l, r) if **l == major.formula => {
                            for (right, hr) in &snapshot {
                                if right.formula == **r && *hr < depth {
                                    fresh.push((
                                        Item {
                                            formula: target.clone(),
                                            open: &major.open | &right.open,
                                            grounds: &major.grounds | &right.grounds,
                                            sign: meet(major.sign, right.sign),
                                            neutral: false,
                                        },
                                        hm.max(hr) + 1,
                                    ));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            let mut changed = false;
            for (item, h) in fresh {
                let slot = items.entry(item).or_insert(usize::MAX);
                if h < *slot {
                    *slot = h;
                    changed = true;
                }
            }
            if !changed {
                return Oracle { items };
            }
        }
    }

    /// Closed triples for `goal`.
    pub fn triples(&self, goal: &Formula) -> BTreeSet<Triple> {
        self.items
            .keys()
            .filter(|i| i.formula == *goal && i.open.is_empty())
            .map(|i| {
                (
                    i.formula.to_string(),
                    i.grounds.iter().cloned().collect(),
                    i.sign.to_string(),
                )
            })
            .collect()
    }
}
