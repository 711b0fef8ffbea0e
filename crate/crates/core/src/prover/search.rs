//! Goal-directed argument construction.
//!
//! Proofs are built in normal form: introduction rules only for goals
//! (`∧I` on conjunctions, `→I` on implications), and elimination chains
//! (`∧E`, `→E`) running from an axiom or an open hypothesis down to the
//! goal. Each `→E` on a chain spawns its antecedent as a new subgoal. A
//! subgoal whose formula and hypothesis context already occur among its
//! ancestors is abandoned, which keeps the search finite on cyclic rule
//! sets independently of the depth bound.

use std::collections::{BTreeMap, BTreeSet};

use crate::dictionary::{DictionaryKind, Sign};
use crate::error::{Error, Result};
use crate::kernel::{Binding, Database, Formula, GroundLabel};
use crate::prover::check::check_proof;
use crate::prover::{Argument, Claim, ProofTerm, SearchLimits};

#[derive(Clone, Copy, Debug)]
enum Step {
    Imp,
    Left,
    Right,
}

/// An elimination chain: the steps that take a source formula to `target`.
#[derive(Clone, Debug)]
struct Chain {
    target: Formula,
    steps: Vec<Step>,
}

fn chains(f: &Formula) -> Vec<Chain> {
    let mut out = vec![Chain {
        target: f.clone(),
        steps: Vec::new(),
    }];
    let mut extend = |step: Step, inner: &Formula| {
        for mut c in chains(inner) {
            c.steps.insert(0, step);
            out.push(c);
        }
    };
    match f {
        Formula::Implies(_, b) => extend(Step::Imp, b),
        Formula::And(l, r) => {
            extend(Step::Left, l);
            extend(Step::Right, r);
        }
        _ => {}
    }
    out
}

struct Source {
    label: String,
    schema: Formula,
    vars: Vec<String>,
    sign: Sign,
    chains: Vec<Chain>,
}

#[derive(Clone, Debug)]
struct Partial {
    proof: ProofTerm,
    grounds: BTreeSet<GroundLabel>,
    sign: Sign,
}

type Key = (BTreeSet<GroundLabel>, Sign);

/// Keeps one proof per `(grounds, sign)`, preferring shallower and then
/// smaller proofs.
#[derive(Default)]
struct Collected(BTreeMap<Key, ProofTerm>);

impl Collected {
    fn add(&mut self, p: Partial) {
        let key = (p.grounds, p.sign);
        match self.0.get(&key) {
            Some(old) if (old.height(), old.size()) <= (p.proof.height(), p.proof.size()) => {}
            _ => {
                self.0.insert(key, p.proof);
            }
        }
    }

    fn into_vec(self) -> Vec<Partial> {
        self.0
            .into_iter()
            .map(|((grounds, sign), proof)| Partial {
                proof,
                grounds,
                sign,
            })
            .collect()
    }
}

type Context = Vec<(Formula, String)>;
type Ancestor = (Formula, BTreeSet<Formula>);

struct Search {
    dict: DictionaryKind,
    top: Sign,
    sources: Vec<Source>,
    constants: Vec<String>,
}

impl Search {
    fn new(db: &Database) -> Search {
        let sources = db
            .normalized_entries()
            .filter(|(e, _)| e.sign.is_positive())
            .map(|(e, f)| Source {
                label: e.label.clone(),
                schema: f.clone(),
                vars: f.vars_in_order(),
                sign: e.sign,
                chains: chains(f),
            })
            .collect();
        Search {
            dict: db.dictionary(),
            top: db.dictionary().top(),
            sources,
            constants: db.constants().iter().cloned().collect(),
        }
    }

    fn combine(&self, l: Sign, m: Sign) -> Sign {
        self.dict
            .combine(l, m)
            .expect("only positive dictionary signs reach the search")
    }

    /// All completions of `partial` over the database constants.
    fn completions(&self, vars: &[String], partial: &Binding) -> Vec<Binding> {
        let mut out = vec![partial.clone()];
        for v in vars.iter().filter(|v| !partial.contains_key(*v)) {
            out = out
                .into_iter()
                .flat_map(|b| {
                    self.constants.iter().map(move |c| {
                        let mut b = b.clone();
                        b.insert(v.clone(), c.clone());
                        b
                    })
                })
                .collect();
        }
        out
    }

    fn prove(
        &self,
        goal: &Formula,
        ctx: &Context,
        ancestors: &mut Vec<Ancestor>,
        budget: usize,
    ) -> Vec<Partial> {
        if budget == 0 {
            return Vec::new();
        }
        let key = (goal.clone(), ctx.iter().map(|(f, _)| f.clone()).collect());
        if ancestors.contains(&key) {
            return Vec::new();
        }
        ancestors.push(key);
        let mut found = Collected::default();

        if budget >= 2 {
            match goal {
                Formula::And(l, r) => {
                    let left = self.prove(l, ctx, ancestors, budget - 1);
                    if !left.is_empty() {
                        let right = self.prove(r, ctx, ancestors, budget - 1);
                        for a in &left {
                            for b in &right {
                                found.add(Partial {
                                    proof: ProofTerm::and_intro(a.proof.clone(), b.proof.clone()),
                                    grounds: &a.grounds | &b.grounds,
                                    sign: self.combine(a.sign, b.sign),
                                });
                            }
                        }
                    }
                }
                Formula::Implies(a, b) => {
                    let name = format!("h{}", ctx.len() + 1);
                    let mut inner = ctx.clone();
                    inner.push(((**a).clone(), name.clone()));
                    for p in self.prove(b, &inner, ancestors, budget - 1) {
                        found.add(Partial {
                            proof: ProofTerm::imp_intro(&name, goal.clone(), p.proof),
                            ..p
                        });
                    }
                }
                _ => {}
            }
        }

        for src in &self.sources {
            for chain in &src.chains {
                if chain.steps.len() + 1 > budget {
                    continue;
                }
                let mut binding = Binding::new();
                if !chain.target.match_ground(goal, &mut binding) {
                    continue;
                }
                for full in self.completions(&src.vars, &binding) {
                    let instance = src.schema.substitute_partial(&full);
                    let label = GroundLabel {
                        label: src.label.clone(),
                        binding: src
                            .vars
                            .iter()
                            .map(|v| (v.clone(), full[v].clone()))
                            .collect(),
                    };
                    let leaf = Partial {
                        proof: ProofTerm::axiom(&label, instance.clone()),
                        grounds: BTreeSet::from([label]),
                        sign: src.sign,
                    };
                    for p in self.run_chain(leaf, instance, &chain.steps, ctx, ancestors, budget) {
                        found.add(p);
                    }
                }
            }
        }

        for (hyp, name) in ctx.iter().rev() {
            for chain in chains(hyp) {
                if chain.steps.len() + 1 > budget || chain.target != *goal {
                    continue;
                }
                let leaf = Partial {
                    proof: ProofTerm::hypothesis(name, hyp.clone()),
                    grounds: BTreeSet::new(),
                    sign: self.top,
                };
                for p in self.run_chain(leaf, hyp.clone(), &chain.steps, ctx, ancestors, budget) {
                    found.add(p);
                }
            }
        }

        ancestors.pop();
        found.into_vec()
    }

    /// Applies the elimination `steps` to the proofs of `start`. The last
    /// step produces the node at the current goal, which has `budget`
    /// levels available.
    fn run_chain(
        &self,
        leaf: Partial,
        start: Formula,
        steps: &[Step],
        ctx: &Context,
        ancestors: &mut Vec<Ancestor>,
        budget: usize,
    ) -> Vec<Partial> {
        let mut current = vec![leaf];
        let mut formula = start;
        let k = steps.len();
        for (j, step) in steps.iter().enumerate() {
            // the node produced by this step sits k - j - 1 levels above the root
            let level = k - j - 1;
            match (step, formula) {
                (Step::Imp, Formula::Implies(a, b)) => {
                    let minors = self.prove(&a, ctx, ancestors, budget - level - 1);
                    let mut next = Vec::new();
                    for major in &current {
                        for minor in &minors {
                            next.push(Partial {
                                proof: ProofTerm::imp_elim(
                                    minor.proof.clone(),
                                    major.proof.clone(),
                                    (*b).clone(),
                                ),
                                grounds: &minor.grounds | &major.grounds,
                                sign: self.combine(minor.sign, major.sign),
                            });
                        }
                    }
                    current = next;
                    formula = *b;
                }
                (Step::Left, Formula::And(l, _)) => {
                    for p in &mut current {
                        p.proof = ProofTerm::and_elim_left(p.proof.clone(), (*l).clone());
                    }
                    formula = *l;
                }
                (Step::Right, Formula::And(_, r)) => {
                    for p in &mut current {
                        p.proof = ProofTerm::and_elim_right(p.proof.clone(), (*r).clone());
                    }
                    formula = *r;
                }
                _ => unreachable!("chains follow the formula's shape"),
            }
            if current.is_empty() {
                break;
            }
        }
        current
    }
}

/// Keeps only claims whose grounds have no strict subset among the others.
pub(crate) fn minimal_claims(claims: Vec<(Claim, ProofTerm)>) -> Vec<(Claim, ProofTerm)> {
    let grounds: Vec<BTreeSet<GroundLabel>> =
        claims.iter().map(|(c, _)| c.grounds.clone()).collect();
    claims
        .into_iter()
        .filter(|(c, _)| {
            !grounds
                .iter()
                .any(|g| g.len() < c.grounds.len() && g.is_subset(&c.grounds))
        })
        .collect()
}

pub(crate) fn validate_goal(goal: &Formula) -> Result<Formula> {
    if !goal.is_ground() {
        return Err(Error::NotGround(goal.to_string()));
    }
    if goal.contains_or() {
        return Err(Error::OutsideFragment(goal.to_string()));
    }
    Ok(goal.normalize())
}

pub(crate) fn validate_limits(limits: &SearchLimits) -> Result<()> {
    if limits.max_depth == 0 || limits.max_args == 0 {
        return Err(Error::InvalidLimits {
            depth: limits.max_depth,
            max_args: limits.max_args,
        });
    }
    Ok(())
}

/// Constructs every argument for `goal` within `limits`.
///
/// Arguments are identified by their `(formula, grounds, sign)` triple and
/// listed in order of their rendered grounds. With `limits.minimal` set,
/// only subset-minimal grounds are reported.
pub fn find_arguments(
    db: &Database,
    goal: &Formula,
    limits: SearchLimits,
) -> Result<Vec<Argument>> {
    validate_limits(&limits)?;
    let goal = validate_goal(goal)?;
    let search = Search::new(db);
    let partials = search.prove(&goal, &Vec::new(), &mut Vec::new(), limits.max_depth);
    let mut claims: Vec<(Claim, ProofTerm)> = partials
        .into_iter()
        .map(|p| (Claim::new(goal.clone(), p.grounds, p.sign), p.proof))
        .collect();
    if limits.minimal {
        claims = minimal_claims(claims);
    }
    claims.sort_by_cached_key(|(c, _)| c.listing_key());
    claims.truncate(limits.max_args);
    claims
        .into_iter()
        .map(|(claim, proof)| {
            let arg = check_proof(db, &proof)?;
            debug_assert_eq!(arg.claim(), &claim, "search and checker disagree");
            Ok(arg)
        })
        .collect()
}
