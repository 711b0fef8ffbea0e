use std::fmt;
use std::str::FromStr;

use crate::dictionary::{Confidence, DictionaryKind, Sign};
use crate::error::{Error, Result};
use crate::kernel::{Database, Formula};
use crate::prover::{find_arguments, Argument, Claim, SearchLimits};

/// A flattening function restricted to one proposition: it maps the signs
/// of a set of arguments for `p` to a single confidence.
pub trait Flattener {
    fn name(&self) -> &str;

    /// The dictionary whose projection the criteria harness draws from.
    fn source(&self) -> DictionaryKind;

    /// Dictionaries whose arguments this flattener aggregates.
    fn accepts(&self, dictionary: DictionaryKind) -> bool {
        dictionary == self.source()
    }

    /// Value on the empty argument set.
    fn bottom(&self) -> Confidence;

    fn flatten_signs(&self, signs: &[Sign]) -> Confidence;

    /// Projects an abstract sign (`+`, `++`, `-`, `--`) into the source
    /// dictionary. `strength` in `[0, 1)` picks the concrete value for a
    /// non-top positive sign in numeric dictionaries. `None` means the
    /// source has no counterpart and such arguments are never seen.
    fn embed(&self, abstract_sign: Sign, strength: f64) -> Option<Sign>;
}

/// The built-in flatteners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinFlattener {
    /// `++` if some argument is confirming, otherwise the number of
    /// arguments. Co-domain `Nat ∪ {++}`.
    Bnd,
    /// Bernoulli's rule `1 − Π(1 − cᵢ)` over independent arguments.
    Num,
    /// The number of pro arguments, for any dictionary.
    Count,
}

impl BuiltinFlattener {
    /// The natural flattener for a database's dictionary.
    pub fn for_dictionary(dictionary: DictionaryKind) -> BuiltinFlattener {
        match dictionary {
            DictionaryKind::Bounded | DictionaryKind::BoundedDelta => BuiltinFlattener::Bnd,
            DictionaryKind::Numeric => BuiltinFlattener::Num,
            DictionaryKind::Generic | DictionaryKind::Delta => BuiltinFlattener::Count,
        }
    }
}

impl Flattener for BuiltinFlattener {
    fn name(&self) -> &str {
        match self {
            BuiltinFlattener::Bnd => "bnd",
            BuiltinFlattener::Num => "num",
            BuiltinFlattener::Count => "count",
        }
    }

    fn source(&self) -> DictionaryKind {
        match self {
            BuiltinFlattener::Bnd => DictionaryKind::Bounded,
            BuiltinFlattener::Num => DictionaryKind::Numeric,
            BuiltinFlattener::Count => DictionaryKind::Generic,
        }
    }

    fn accepts(&self, dictionary: DictionaryKind) -> bool {
        match self {
            BuiltinFlattener::Bnd => matches!(
                dictionary,
                DictionaryKind::Bounded | DictionaryKind::BoundedDelta
            ),
            BuiltinFlattener::Num => dictionary == DictionaryKind::Numeric,
            BuiltinFlattener::Count => true,
        }
    }

    fn bottom(&self) -> Confidence {
        match self {
            BuiltinFlattener::Num => Confidence::Degree(0.0),
            _ => Confidence::Count(0),
        }
    }

    fn flatten_signs(&self, signs: &[Sign]) -> Confidence {
        match self {
            BuiltinFlattener::Bnd => {
                if signs.contains(&Sign::DoublePlus) {
                    Confidence::Certain
                } else {
                    Confidence::Count(signs.iter().filter(|s| **s == Sign::Plus).count() as u64)
                }
            }
            BuiltinFlattener::Num => {
                let disbelief: f64 = signs
                    .iter()
                    .filter_map(|s| match s {
                        Sign::Degree(c) => Some(1.0 - c.value()),
                        _ => None,
                    })
                    .product();
                Confidence::Degree(1.0 - disbelief)
            }
            BuiltinFlattener::Count => {
                Confidence::Count(signs.iter().filter(|s| s.is_positive()).count() as u64)
            }
        }
    }

    fn embed(&self, abstract_sign: Sign, strength: f64) -> Option<Sign> {
        match (self, abstract_sign) {
            (BuiltinFlattener::Bnd, Sign::Plus | Sign::DoublePlus) => Some(abstract_sign),
            (BuiltinFlattener::Num, Sign::Plus) => Sign::degree(strength).ok(),
            (BuiltinFlattener::Num, Sign::DoublePlus) => Some(Sign::degree(1.0).unwrap()),
            (BuiltinFlattener::Count, Sign::Plus) => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for BuiltinFlattener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinFlattener {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bnd" => Ok(BuiltinFlattener::Bnd),
            "num" => Ok(BuiltinFlattener::Num),
            "count" | "generic-count" => Ok(BuiltinFlattener::Count),
            _ => Err(format!(
                "unknown flattener `{s}` (expected bnd, num or count)"
            )),
        }
    }
}

fn check_signs(claims: &[&Claim], f: &dyn Flattener) -> Result<()> {
    let fits = DictionaryKind::ALL
        .into_iter()
        .filter(|d| f.accepts(*d))
        .any(|d| claims.iter().all(|c| d.contains(c.sign)));
    if fits {
        Ok(())
    } else {
        Err(Error::IncompatibleSigns {
            flattener: f.name().to_string(),
            signs: claims
                .iter()
                .map(|c| c.sign.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        })
    }
}

/// Aggregates a set of arguments for one proposition.
pub fn flatten<'a, I>(claims: I, f: &dyn Flattener) -> Result<Confidence>
where
    I: IntoIterator<Item = &'a Claim>,
{
    let claims: Vec<&Claim> = claims.into_iter().collect();
    if let Some(first) = claims.first() {
        let p = first.formula.normalize();
        if let Some(other) = claims.iter().find(|c| c.formula.normalize() != p) {
            return Err(Error::MixedConclusions(
                first.formula.to_string(),
                other.formula.to_string(),
            ));
        }
    }
    check_signs(&claims, f)?;
    if claims.is_empty() {
        return Ok(f.bottom());
    }
    let signs: Vec<Sign> = claims.iter().map(|c| c.sign).collect();
    Ok(f.flatten_signs(&signs))
}

pub fn flatten_arguments(args: &[Argument], f: &dyn Flattener) -> Result<Confidence> {
    flatten(args.iter().map(Argument::claim), f)
}

/// Aggregation over the bounded dictionary, co-domain `Nat ∪ {++}`.
pub fn agg_bnd(db: &Database, p: &Formula, limits: SearchLimits) -> Result<Confidence> {
    db.require(&[DictionaryKind::Bounded])?;
    let args = find_arguments(db, p, limits)?;
    flatten_arguments(&args, &BuiltinFlattener::Bnd)
}

/// Bernoulli aggregation over the numeric dictionary, treating the
/// arguments as independent.
pub fn agg_num(db: &Database, p: &Formula, limits: SearchLimits) -> Result<f64> {
    db.require(&[DictionaryKind::Numeric])?;
    let args = find_arguments(db, p, limits)?;
    match flatten_arguments(&args, &BuiltinFlattener::Num)? {
        Confidence::Degree(x) => Ok(x),
        other => unreachable!("num flattener produced {other}"),
    }
}

/// Pairs of arguments (by index) whose grounds overlap. Bernoulli
/// aggregation does not correct for these.
pub fn overlapping_grounds(args: &[Argument]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..args.len() {
        for j in i + 1..args.len() {
            if !args[i].grounds().is_disjoint(args[j].grounds()) {
                out.push((i, j));
            }
        }
    }
    out
}
