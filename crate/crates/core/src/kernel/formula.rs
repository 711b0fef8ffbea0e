//! Object-language formulas.
//!
//! Atoms range over constants and variables only. `Not` exists as surface
//! syntax; [`Formula::normalize`] rewrites it to `φ -> #`, which is the only
//! form the prover and the checker ever compare.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A term: either a constant (lower-case identifier) or a variable
/// (upper-case identifier).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Const(s) | Term::Var(s) => s,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A predicate applied to terms. Zero-arity atoms are propositional letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A sentence of the object language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Falsum,
    Not(Box<Formula>),
}

/// A variable-to-constant assignment.
pub type Binding = BTreeMap<String, String>;

impl Formula {
    /// Propositional letter `name`.
    pub fn prop(name: &str) -> Formula {
        Formula::Atom(Atom {
            predicate: name.to_string(),
            args: Vec::new(),
        })
    }

    /// Predicate application. Upper-case initials become variables.
    pub fn pred(name: &str, args: &[&str]) -> Formula {
        let args = args
            .iter()
            .map(|a| {
                if a.starts_with(|c: char| c.is_ascii_uppercase()) {
                    Term::Var(a.to_string())
                } else {
                    Term::Const(a.to_string())
                }
            })
            .collect();
        Formula::Atom(Atom {
            predicate: name.to_string(),
            args,
        })
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// `f -> #`, the kernel-normal spelling of negation.
    pub fn negation(f: Formula) -> Formula {
        Formula::implies(f, Formula::Falsum)
    }

    /// Rewrites every `~φ` into `φ -> #`.
    pub fn normalize(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Falsum => self.clone(),
            Formula::And(l, r) => Formula::and(l.normalize(), r.normalize()),
            Formula::Or(l, r) => Formula::or(l.normalize(), r.normalize()),
            Formula::Implies(l, r) => Formula::implies(l.normalize(), r.normalize()),
            Formula::Not(x) => Formula::negation(x.normalize()),
        }
    }

    /// Inverse of [`Formula::normalize`] for display: every `φ -> #`
    /// becomes `~φ`.
    pub fn readable(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Falsum => self.clone(),
            Formula::Implies(l, r) if **r == Formula::Falsum => Formula::not(l.readable()),
            Formula::And(l, r) => Formula::and(l.readable(), r.readable()),
            Formula::Or(l, r) => Formula::or(l.readable(), r.readable()),
            Formula::Implies(l, r) => Formula::implies(l.readable(), r.readable()),
            Formula::Not(x) => Formula::not(x.readable()),
        }
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Falsum => true,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_normal() && r.is_normal()
            }
            Formula::Not(_) => false,
        }
    }

    /// If the kernel-normal form is `q -> #`, returns `q`.
    pub fn negated_body(&self) -> Option<Formula> {
        match self.normalize() {
            Formula::Implies(q, r) if *r == Formula::Falsum => Some(*q),
            _ => None,
        }
    }

    /// The complementation operator: `−(¬q) = q`, otherwise `−p = ¬p`.
    /// The result is kernel-normal.
    pub fn complement(&self) -> Formula {
        let nf = self.normalize();
        match nf {
            Formula::Implies(q, r) if *r == Formula::Falsum => *q,
            other => Formula::negation(other),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.vars_in_order().is_empty()
    }

    /// Variables in order of first occurrence, left to right.
    pub fn vars_in_order(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    if let Term::Var(v) = t {
                        if !out.contains(v) {
                            out.push(v.clone());
                        }
                    }
                }
            }
            Formula::Falsum => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Not(x) => x.collect_vars(out),
        }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    if let Term::Const(c) = t {
                        out.insert(c.clone());
                    }
                }
            }
            Formula::Falsum => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_constants(out);
                r.collect_constants(out);
            }
            Formula::Not(x) => x.collect_constants(out),
        }
    }

    /// Instantiates variables. Fails if any variable is left unbound.
    pub fn substitute(&self, binding: &Binding) -> Result<Formula> {
        let out = self.substitute_partial(binding);
        match out.vars_in_order().into_iter().next() {
            Some(v) => Err(Error::UnboundVariable(v)),
            None => Ok(out),
        }
    }

    /// Instantiates the variables bound in `binding`, leaving the rest.
    pub fn substitute_partial(&self, binding: &Binding) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                predicate: a.predicate.clone(),
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => match binding.get(v) {
                            Some(c) => Term::Const(c.clone()),
                            None => t.clone(),
                        },
                        Term::Const(_) => t.clone(),
                    })
                    .collect(),
            }),
            Formula::Falsum => Formula::Falsum,
            Formula::And(l, r) => {
                Formula::and(l.substitute_partial(binding), r.substitute_partial(binding))
            }
            Formula::Or(l, r) => {
                Formula::or(l.substitute_partial(binding), r.substitute_partial(binding))
            }
            Formula::Implies(l, r) => {
                Formula::implies(l.substitute_partial(binding), r.substitute_partial(binding))
            }
            Formula::Not(x) => Formula::not(x.substitute_partial(binding)),
        }
    }

    /// One-way matching of a schema against a ground formula, extending
    /// `binding`. Returns false (and may leave `binding` partially
    /// extended) on mismatch.
    pub fn match_ground(&self, ground: &Formula, binding: &mut Binding) -> bool {
        match (self, ground) {
            (Formula::Atom(p), Formula::Atom(g)) => {
                if p.predicate != g.predicate || p.args.len() != g.args.len() {
                    return false;
                }
                for (pt, gt) in p.args.iter().zip(&g.args) {
                    let Term::Const(gc) = gt else { return false };
                    match pt {
                        Term::Const(pc) => {
                            if pc != gc {
                                return false;
                            }
                        }
                        Term::Var(v) => match binding.get(v) {
                            Some(bound) if bound != gc => return false,
                            Some(_) => {}
                            None => {
                                binding.insert(v.clone(), gc.clone());
                            }
                        },
                    }
                }
                true
            }
            (Formula::Falsum, Formula::Falsum) => true,
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
                a.match_ground(c, binding) && b.match_ground(d, binding)
            }
            (Formula::Not(a), Formula::Not(b)) => a.match_ground(b, binding),
            _ => false,
        }
    }

    /// Every subformula, including `self`, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        out.push(self);
        match self {
            Formula::Atom(_) | Formula::Falsum => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_subformulas(out);
                r.collect_subformulas(out);
            }
            Formula::Not(x) => x.collect_subformulas(out),
        }
    }

    pub fn contains_or(&self) -> bool {
        self.subformulas()
            .iter()
            .any(|f| matches!(f, Formula::Or(_, _)))
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(_, _) => 1,
            Formula::Or(_, _) => 2,
            Formula::And(_, _) => 3,
            Formula::Not(_) => 4,
            Formula::Atom(_) | Formula::Falsum => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.precedence() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Falsum => f.write_str("#")?,
            Formula::Not(x) => {
                f.write_str("~")?;
                x.write_prec(f, 4)?;
            }
            Formula::And(l, r) => {
                l.write_prec(f, 3)?;
                f.write_str(" & ")?;
                r.write_prec(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.write_prec(f, 2)?;
                f.write_str(" | ")?;
                r.write_prec(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.write_prec(f, 2)?;
                f.write_str(" -> ")?;
                r.write_prec(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Canonical rendering with the fewest parentheses the grammar allows.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        crate::kernel::parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
