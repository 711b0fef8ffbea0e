use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dictionary::{DictionaryKind, Sign};
use crate::error::{Error, Result};
use crate::kernel::formula::{Binding, Formula};

/// A labelled, signed axiom. The formula may be a schema.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomEntry {
    pub label: String,
    pub formula: Formula,
    pub sign: Sign,
}

impl AxiomEntry {
    pub fn new(label: &str, formula: Formula, sign: Sign) -> AxiomEntry {
        AxiomEntry {
            label: label.to_string(),
            formula,
            sign,
        }
    }
}

/// A knowledge base: a dictionary and an ordered list of axioms with
/// unique labels.
///
/// Schemas stand for all their ground instances. Variables left free after
/// matching a goal range over [`Database::constants`], the constants that
/// occur anywhere in the axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct Database {
    dictionary: DictionaryKind,
    entries: Vec<AxiomEntry>,
    normalized: Vec<Formula>,
    constants: BTreeSet<String>,
}

impl Database {
    pub fn new(dictionary: DictionaryKind, entries: Vec<AxiomEntry>) -> Result<Database> {
        let mut db = Database {
            dictionary,
            entries: Vec::with_capacity(entries.len()),
            normalized: Vec::with_capacity(entries.len()),
            constants: BTreeSet::new(),
        };
        for e in entries {
            db.push(e)?;
        }
        Ok(db)
    }

    pub fn empty(dictionary: DictionaryKind) -> Database {
        Database {
            dictionary,
            entries: Vec::new(),
            normalized: Vec::new(),
            constants: BTreeSet::new(),
        }
    }

    /// Appends an axiom, enforcing label uniqueness and sign membership.
    pub fn push(&mut self, entry: AxiomEntry) -> Result<()> {
        let line = self.entries.len() + 1;
        if self.entry(&entry.label).is_some() {
            return Err(Error::DuplicateLabel {
                line,
                label: entry.label,
            });
        }
        if !self.dictionary.contains(entry.sign) {
            return Err(Error::SignNotInDictionary {
                line,
                sign: entry.sign.to_string(),
                dictionary: self.dictionary,
            });
        }
        self.constants.extend(entry.formula.constants());
        self.normalized.push(entry.formula.normalize());
        self.entries.push(entry);
        Ok(())
    }

    pub fn with(mut self, entry: AxiomEntry) -> Result<Database> {
        self.push(entry)?;
        Ok(self)
    }

    pub fn dictionary(&self) -> DictionaryKind {
        self.dictionary
    }

    pub fn entries(&self) -> &[AxiomEntry] {
        &self.entries
    }

    /// Axioms paired with their kernel-normal formulas.
    pub fn normalized_entries(&self) -> impl Iterator<Item = (&AxiomEntry, &Formula)> {
        self.entries.iter().zip(&self.normalized)
    }

    pub fn entry(&self, label: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn require(&self, expected: &[DictionaryKind]) -> Result<()> {
        if expected.contains(&self.dictionary) {
            Ok(())
        } else {
            Err(Error::WrongDictionary {
                expected: expected
                    .iter()
                    .map(|k| k.name())
                    .collect::<Vec<_>>()
                    .join(" or "),
                found: self.dictionary,
            })
        }
    }

    /// Resolves a rendered ground label such as `t1(someX)` to its axiom
    /// and the instantiated, kernel-normal formula.
    pub fn resolve(&self, rendered: &str) -> Option<(GroundLabel, &AxiomEntry, Formula)> {
        let (name, consts) = match rendered.find('(') {
            Some(i) if rendered.ends_with(')') => {
                let inner = &rendered[i + 1..rendered.len() - 1];
                let consts: Vec<String> = inner.split(',').map(|c| c.trim().to_string()).collect();
                (&rendered[..i], consts)
            }
            Some(_) => return None,
            None => (rendered, Vec::new()),
        };
        let (entry, normal) = self.normalized_entries().find(|(e, _)| e.label == name)?;
        let vars = normal.vars_in_order();
        if vars.len() != consts.len() {
            return None;
        }
        let binding: Binding = vars.iter().cloned().zip(consts.iter().cloned()).collect();
        let formula = normal.substitute(&binding).ok()?;
        let label = GroundLabel {
            label: name.to_string(),
            binding: vars.into_iter().zip(consts).collect(),
        };
        Some((label, entry, formula))
    }
}

/// An axiom label together with the instantiation of its schema variables,
/// listed in the schema's variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLabel {
    pub label: String,
    pub binding: Vec<(String, String)>,
}

impl GroundLabel {
    pub fn plain(label: &str) -> GroundLabel {
        GroundLabel {
            label: label.to_string(),
            binding: Vec::new(),
        }
    }
}

/// `label` or `label(c1,…,cn)`.
impl fmt::Display for GroundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if !self.binding.is_empty() {
            f.write_str("(")?;
            for (i, (_, c)) in self.binding.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(c)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Serialize for GroundLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_label_rendering() {
        assert_eq!(GroundLabel::plain("f1").to_string(), "f1");
        let g = GroundLabel {
            label: "t1".into(),
            binding: vec![("X".into(), "someX".into())],
        };
        assert_eq!(g.to_string(), "t1(someX)");
        let h = GroundLabel {
            label: "r".into(),
            binding: vec![("Y".into(), "c".into()), ("X".into(), "d".into())],
        };
        assert_eq!(h.to_string(), "r(c,d)");
    }

    #[test]
    fn resolve_instantiates_in_variable_order() {
        let db = Database::new(
            DictionaryKind::Bounded,
            vec![AxiomEntry::new(
                "r",
                crate::kernel::parse_formula("p(Y, X) -> q(X)").unwrap(),
                Sign::Plus,
            )],
        )
        .unwrap();
        let (label, entry, f) = db.resolve("r(c,d)").unwrap();
        assert_eq!(entry.label, "r");
        assert_eq!(label.binding[0], ("Y".to_string(), "c".to_string()));
        assert_eq!(f.to_string(), "p(c, d) -> q(d)");
        assert!(db.resolve("r(c)").is_none());
        assert!(db.resolve("nope").is_none());
    }

    #[test]
    fn push_validates() {
        let mut db = Database::empty(DictionaryKind::Bounded);
        db.push(AxiomEntry::new("a", Formula::prop("a"), Sign::Plus))
            .unwrap();
        assert!(db
            .push(AxiomEntry::new("a", Formula::prop("b"), Sign::Plus))
            .is_err());
        assert!(db
            .push(AxiomEntry::new("b", Formula::prop("b"), Sign::Minus))
            .is_err());
    }
}
