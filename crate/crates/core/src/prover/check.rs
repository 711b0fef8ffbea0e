//! Proof checking against the full rule set, `∨` and `¬` included.

use std::collections::BTreeSet;

use crate::dictionary::{DictionaryKind, Sign};
use crate::error::{Error, Result};
use crate::kernel::{Database, Formula, GroundLabel};
use crate::prover::proof::rule_name;
use crate::prover::{Argument, Claim, ProofTerm, Rule};

struct Assumption {
    name: String,
    formula: Formula,
    grounds: BTreeSet<GroundLabel>,
}

struct Derived {
    formula: Formula,
    grounds: BTreeSet<GroundLabel>,
    sign: Sign,
}

struct Checker<'a> {
    db: &'a Database,
    dict: DictionaryKind,
    scope: Vec<Assumption>,
    nodes: Vec<(Formula, Sign)>,
    assumed: Vec<bool>,
}

fn mismatch(path: &str, message: String) -> Error {
    Error::RuleMismatch {
        path: path.to_string(),
        message,
    }
}

impl Checker<'_> {
    fn arity(&self, node: &ProofTerm, path: &str, n: usize, discharges: usize) -> Result<()> {
        if node.children.len() != n {
            return Err(mismatch(
                path,
                format!(
                    "{} expects {n} premise(s), found {}",
                    rule_name(node.rule),
                    node.children.len()
                ),
            ));
        }
        if node.discharges.len() != discharges {
            return Err(mismatch(
                path,
                format!(
                    "{} discharges {discharges} assumption(s), found {}",
                    rule_name(node.rule),
                    node.discharges.len()
                ),
            ));
        }
        Ok(())
    }

    fn child(&mut self, node: &ProofTerm, path: &str, i: usize) -> Result<Derived> {
        self.check(&node.children[i], &format!("{path}.{i}"))
    }

    fn combine(&self, path: &str, l: Sign, m: Sign) -> Result<Sign> {
        self.dict
            .combine(l, m)
            .map_err(|e| mismatch(path, e.to_string()))
    }

    fn with_assumption<T>(
        &mut self,
        name: &str,
        formula: Formula,
        grounds: BTreeSet<GroundLabel>,
        f: impl FnOnce(&mut Self) -> Result<T>,
    ) -> Result<T> {
        self.scope.push(Assumption {
            name: name.to_string(),
            formula,
            grounds,
        });
        let out = f(self);
        self.scope.pop();
        out
    }

    fn check(&mut self, node: &ProofTerm, path: &str) -> Result<Derived> {
        let conclusion = node.conclusion.normalize();
        let derived = match node.rule {
            Rule::Axiom => {
                self.arity(node, path, 0, 0)?;
                let rendered = node
                    .label
                    .as_deref()
                    .ok_or_else(|| mismatch(path, "axiom leaf without a label".into()))?;
                let (label, entry, formula) =
                    self.db
                        .resolve(rendered)
                        .ok_or_else(|| Error::UnknownLabel {
                            path: path.to_string(),
                            label: rendered.to_string(),
                        })?;
                if !entry.sign.is_positive() {
                    return Err(mismatch(
                        path,
                        format!(
                            "axiom `{rendered}` carries the negative sign {}",
                            entry.sign
                        ),
                    ));
                }
                if formula != conclusion {
                    return Err(mismatch(
                        path,
                        format!("axiom `{rendered}` states `{formula}`, not `{conclusion}`"),
                    ));
                }
                Derived {
                    formula,
                    grounds: BTreeSet::from([label]),
                    sign: entry.sign,
                }
            }
            Rule::Hypothesis => {
                self.arity(node, path, 0, 0)?;
                let name = node
                    .label
                    .as_deref()
                    .ok_or_else(|| mismatch(path, "hypothesis leaf without a name".into()))?;
                let assumption = self
                    .scope
                    .iter()
                    .rev()
                    .find(|a| a.name == name)
                    .ok_or_else(|| Error::UndischargedHypothesis {
                        path: path.to_string(),
                        name: name.to_string(),
                    })?;
                if assumption.formula != conclusion {
                    return Err(mismatch(
                        path,
                        format!(
                            "hypothesis `{name}` assumes `{}`, not `{conclusion}`",
                            assumption.formula
                        ),
                    ));
                }
                Derived {
                    formula: conclusion.clone(),
                    grounds: assumption.grounds.clone(),
                    sign: self.dict.top(),
                }
            }
            Rule::AndIntro => {
                self.arity(node, path, 2, 0)?;
                let l = self.child(node, path, 0)?;
                let r = self.child(node, path, 1)?;
                let expected = Formula::and(l.formula, r.formula);
                if expected != conclusion {
                    return Err(mismatch(path, format!("and_intro yields `{expected}`")));
                }
                Derived {
                    formula: expected,
                    grounds: &l.grounds | &r.grounds,
                    sign: self.combine(path, l.sign, r.sign)?,
                }
            }
            Rule::AndElimLeft | Rule::AndElimRight => {
                self.arity(node, path, 1, 0)?;
                let p = self.child(node, path, 0)?;
                let Formula::And(l, r) = p.formula else {
                    return Err(mismatch(
                        path,
                        format!("premise `{}` is not a conjunction", p.formula),
                    ));
                };
                let expected = if node.rule == Rule::AndElimLeft {
                    *l
                } else {
                    *r
                };
                if expected != conclusion {
                    return Err(mismatch(path, format!("conjunct is `{expected}`")));
                }
                Derived {
                    formula: expected,
                    grounds: p.grounds,
                    sign: p.sign,
                }
            }
            Rule::ImpIntro | Rule::NotIntro => {
                self.arity(node, path, 1, 1)?;
                let Formula::Implies(antecedent, consequent) = conclusion.clone() else {
                    return Err(mismatch(
                        path,
                        format!("`{conclusion}` is not an implication"),
                    ));
                };
                if node.rule == Rule::NotIntro && *consequent != Formula::Falsum {
                    return Err(mismatch(path, format!("`{conclusion}` is not a negation")));
                }
                let body =
                    self.with_assumption(&node.discharges[0], *antecedent, BTreeSet::new(), |c| {
                        c.child(node, path, 0)
                    })?;
                if body.formula != *consequent {
                    return Err(mismatch(
                        path,
                        format!("body proves `{}`, expected `{consequent}`", body.formula),
                    ));
                }
                Derived {
                    formula: conclusion.clone(),
                    grounds: body.grounds,
                    sign: body.sign,
                }
            }
            Rule::ImpElim | Rule::NotElim => {
                self.arity(node, path, 2, 0)?;
                let minor = self.child(node, path, 0)?;
                let major = self.child(node, path, 1)?;
                let Formula::Implies(antecedent, consequent) = &major.formula else {
                    return Err(mismatch(
                        path,
                        format!("major premise `{}` is not an implication", major.formula),
                    ));
                };
                if **antecedent != minor.formula {
                    return Err(mismatch(
                        path,
                        format!(
                            "minor premise `{}` does not match antecedent `{antecedent}`",
                            minor.formula
                        ),
                    ));
                }
                if node.rule == Rule::NotElim && **consequent != Formula::Falsum {
                    return Err(mismatch(
                        path,
                        format!("`{}` is not a negation", major.formula),
                    ));
                }
                if **consequent != conclusion {
                    return Err(mismatch(
                        path,
                        format!("modus ponens yields `{consequent}`"),
                    ));
                }
                Derived {
                    formula: conclusion.clone(),
                    grounds: &minor.grounds | &major.grounds,
                    sign: self.combine(path, minor.sign, major.sign)?,
                }
            }
            Rule::OrIntroLeft | Rule::OrIntroRight => {
                self.arity(node, path, 1, 0)?;
                let p = self.child(node, path, 0)?;
                let Formula::Or(l, r) = &conclusion else {
                    return Err(mismatch(
                        path,
                        format!("`{conclusion}` is not a disjunction"),
                    ));
                };
                let side = if node.rule == Rule::OrIntroLeft { l } else { r };
                if **side != p.formula {
                    return Err(mismatch(
                        path,
                        format!("premise `{}` is not a disjunct", p.formula),
                    ));
                }
                Derived {
                    formula: conclusion.clone(),
                    grounds: p.grounds,
                    sign: p.sign,
                }
            }
            Rule::OrElim => {
                self.arity(node, path, 3, 2)?;
                let d = self.child(node, path, 0)?;
                let Formula::Or(l, r) = d.formula else {
                    return Err(mismatch(
                        path,
                        format!("premise `{}` is not a disjunction", d.formula),
                    ));
                };
                // the discharged disjuncts inherit the grounds of the disjunction
                let left =
                    self.with_assumption(&node.discharges[0], *l, d.grounds.clone(), |c| {
                        c.child(node, path, 1)
                    })?;
                let right =
                    self.with_assumption(&node.discharges[1], *r, d.grounds.clone(), |c| {
                        c.child(node, path, 2)
                    })?;
                if left.formula != conclusion || right.formula != conclusion {
                    return Err(mismatch(
                        path,
                        format!(
                            "cases prove `{}` and `{}`, expected `{conclusion}`",
                            left.formula, right.formula
                        ),
                    ));
                }
                let inner = self.combine(path, left.sign, right.sign)?;
                Derived {
                    formula: conclusion.clone(),
                    grounds: &left.grounds | &right.grounds,
                    sign: self.combine(path, d.sign, inner)?,
                }
            }
        };
        self.nodes.push((derived.formula.clone(), derived.sign));
        self.assumed.push(node.rule == Rule::Hypothesis);
        Ok(derived)
    }
}

/// Validates every node of `proof` against its rule and returns the
/// argument at the root.
pub fn check_proof(db: &Database, proof: &ProofTerm) -> Result<Argument> {
    let mut checker = Checker {
        db,
        dict: db.dictionary(),
        scope: Vec::new(),
        nodes: Vec::new(),
        assumed: Vec::new(),
    };
    let root = checker.check(proof, "root")?;
    let claim = Claim::new(root.formula, root.grounds, root.sign);
    Ok(Argument::from_parts(
        claim,
        proof.clone(),
        checker.nodes,
        checker.assumed,
    ))
}
