//! Sign dictionaries.
//!
//! A dictionary is a set of signs with a total order `≤`, a combination
//! operator `•` and a top element. The five built-in dictionaries are:
//!
//! | dictionary      | elements               | top  | `•`            |
//! |-----------------|------------------------|------|----------------|
//! | `generic`       | `+`                    | `+`  | `+ • + = +`    |
//! | `bounded`       | `+ < ++`               | `++` | minimum        |
//! | `delta`         | `- < +`                | `+`  | min on `{+}`   |
//! | `bounded-delta` | `-- < - < + < ++`      | `++` | min on `{+,++}`|
//! | `numeric`       | `[0, 1]`               | `1`  | product        |
//!
//! In the two delta dictionaries the negative signs never take part in a
//! proof; they only appear through the signed closure in [`crate::defeat`].
//! Combining a negative sign is therefore an error.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DictionaryKind {
    Generic,
    Bounded,
    Delta,
    BoundedDelta,
    Numeric,
}

impl DictionaryKind {
    pub const ALL: [DictionaryKind; 5] = [
        DictionaryKind::Generic,
        DictionaryKind::Bounded,
        DictionaryKind::Delta,
        DictionaryKind::BoundedDelta,
        DictionaryKind::Numeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DictionaryKind::Generic => "generic",
            DictionaryKind::Bounded => "bounded",
            DictionaryKind::Delta => "delta",
            DictionaryKind::BoundedDelta => "bounded-delta",
            DictionaryKind::Numeric => "numeric",
        }
    }

    /// The elements of a finite dictionary in ascending order; empty for
    /// `numeric`.
    pub fn elements(self) -> &'static [Sign] {
        use Sign::*;
        match self {
            DictionaryKind::Generic => &[Plus],
            DictionaryKind::Bounded => &[Plus, DoublePlus],
            DictionaryKind::Delta => &[Minus, Plus],
            DictionaryKind::BoundedDelta => &[DoubleMinus, Minus, Plus, DoublePlus],
            DictionaryKind::Numeric => &[],
        }
    }

    pub fn contains(self, sign: Sign) -> bool {
        match (self, sign) {
            (DictionaryKind::Numeric, Sign::Degree(c)) => (0.0..=1.0).contains(&c.value()),
            (DictionaryKind::Numeric, _) | (_, Sign::Degree(_)) => false,
            (kind, s) => kind.elements().contains(&s),
        }
    }

    fn check(self, sign: Sign) -> Result<()> {
        if self.contains(sign) {
            Ok(())
        } else {
            Err(Error::ForeignSign {
                sign: sign.to_string(),
                dictionary: self,
            })
        }
    }

    pub fn top(self) -> Sign {
        match self {
            DictionaryKind::Generic | DictionaryKind::Delta => Sign::Plus,
            DictionaryKind::Bounded | DictionaryKind::BoundedDelta => Sign::DoublePlus,
            DictionaryKind::Numeric => Sign::Degree(Coefficient::ONE),
        }
    }

    /// Whether the dictionary has the polarity flip `+ ↔ -`, `++ ↔ --`.
    pub fn has_polarity(self) -> bool {
        matches!(self, DictionaryKind::Delta | DictionaryKind::BoundedDelta)
    }

    /// The total order of the dictionary.
    pub fn leq(self, l: Sign, m: Sign) -> Result<bool> {
        self.check(l)?;
        self.check(m)?;
        Ok(match (l, m) {
            (Sign::Degree(a), Sign::Degree(b)) => a.value() <= b.value(),
            (a, b) => a.rank() <= b.rank(),
        })
    }

    /// The combination operator `•` used when a rule joins two premises.
    pub fn combine(self, l: Sign, m: Sign) -> Result<Sign> {
        self.check(l)?;
        self.check(m)?;
        match (l, m) {
            (Sign::Degree(a), Sign::Degree(b)) => {
                Ok(Sign::Degree(Coefficient::new(a.value() * b.value())?))
            }
            (a, b) => {
                for s in [a, b] {
                    if !s.is_positive() {
                        return Err(Error::ForeignSign {
                            sign: s.to_string(),
                            dictionary: self,
                        });
                    }
                }
                Ok(if a.rank() <= b.rank() { a } else { b })
            }
        }
    }

    /// Polarity flip. Only defined for `delta` and `bounded-delta`.
    pub fn flip(self, l: Sign) -> Result<Sign> {
        if !self.has_polarity() {
            return Err(Error::WrongDictionary {
                expected: "delta or bounded-delta".into(),
                found: self,
            });
        }
        self.check(l)?;
        Ok(match l {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::DoublePlus => Sign::DoubleMinus,
            Sign::DoubleMinus => Sign::DoublePlus,
            Sign::Degree(_) => unreachable!("numeric signs are rejected by check"),
        })
    }

    pub fn parse_sign(self, text: &str) -> Option<Sign> {
        let sign: Sign = text.parse().ok()?;
        self.contains(sign).then_some(sign)
    }
}

impl fmt::Display for DictionaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DictionaryKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        DictionaryKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown dictionary `{s}`"))
    }
}

impl Serialize for DictionaryKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A real number in `[0, 1]` with a total order, so that numeric signs can
/// be compared, hashed and deduplicated.
#[derive(Clone, Copy, Debug)]
pub struct Coefficient(f64);

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient(0.0);
    pub const ONE: Coefficient = Coefficient(1.0);

    pub fn new(value: f64) -> Result<Coefficient> {
        if (0.0..=1.0).contains(&value) {
            // -0.0 and 0.0 must compare equal under total_cmp
            Ok(Coefficient(value + 0.0))
        } else {
            Err(Error::ForeignSign {
                sign: value.to_string(),
                dictionary: DictionaryKind::Numeric,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for Coefficient {}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Hash for Coefficient {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

/// Renders a real with at most twelve decimals and no trailing zeros.
pub fn format_degree(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// An element of some dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    DoubleMinus,
    Minus,
    Plus,
    DoublePlus,
    Degree(Coefficient),
}

impl Sign {
    fn rank(self) -> u8 {
        match self {
            Sign::DoubleMinus => 0,
            Sign::Minus => 1,
            Sign::Plus => 2,
            Sign::DoublePlus => 3,
            Sign::Degree(_) => 4,
        }
    }

    pub fn degree(value: f64) -> Result<Sign> {
        Ok(Sign::Degree(Coefficient::new(value)?))
    }

    /// Pro signs: `+`, `++` and every numeric degree.
    pub fn is_positive(self) -> bool {
        !matches!(self, Sign::Minus | Sign::DoubleMinus)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::DoubleMinus => f.write_str("--"),
            Sign::Minus => f.write_str("-"),
            Sign::Plus => f.write_str("+"),
            Sign::DoublePlus => f.write_str("++"),
            Sign::Degree(c) => f.write_str(&format_degree(c.value())),
        }
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Sign, String> {
        match s {
            "--" => Ok(Sign::DoubleMinus),
            "-" => Ok(Sign::Minus),
            "+" => Ok(Sign::Plus),
            "++" => Ok(Sign::DoublePlus),
            _ if s.starts_with(|c: char| c.is_ascii_digit() || c == '.') => s
                .parse::<f64>()
                .ok()
                .and_then(|v| Sign::degree(v).ok())
                .ok_or_else(|| format!("`{s}` is not a degree in [0, 1]")),
            _ => Err(format!("unknown sign `{s}`")),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An aggregated confidence: an element of `Nat ∪ {++}` or of `[0, 1]`.
///
/// Within `Nat ∪ {++}` every natural lies below `++`. Counts and degrees
/// are not comparable with each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Confidence {
    Count(u64),
    Certain,
    Degree(f64),
}

impl Confidence {
    pub fn leq(self, other: Confidence) -> Option<bool> {
        self.partial_cmp(&other).map(|o| o != Ordering::Greater)
    }
}

impl PartialOrd for Confidence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use Confidence::*;
        match (self, other) {
            (Count(a), Count(b)) => Some(a.cmp(b)),
            (Count(_), Certain) => Some(Ordering::Less),
            (Certain, Count(_)) => Some(Ordering::Greater),
            (Certain, Certain) => Some(Ordering::Equal),
            (Degree(a), Degree(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Confidence::Count(n) => write!(f, "{n}"),
            Confidence::Certain => f.write_str("++"),
            Confidence::Degree(x) => f.write_str(&format_degree(*x)),
        }
    }
}

impl Serialize for Confidence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Confidence::Count(n) => s.serialize_u64(*n),
            Confidence::Certain => s.serialize_str("++"),
            Confidence::Degree(x) => s.serialize_f64(*x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DictionaryKind::*;
    use Sign::*;

    #[test]
    fn minimal_support_table() {
        assert_eq!(Bounded.combine(Plus, DoublePlus).unwrap(), Plus);
        assert_eq!(Bounded.combine(DoublePlus, Plus).unwrap(), Plus);
        assert_eq!(Bounded.combine(DoublePlus, DoublePlus).unwrap(), DoublePlus);
        assert_eq!(Bounded.combine(Plus, Plus).unwrap(), Plus);
        let x = Sign::degree(0.7).unwrap();
        assert_eq!(Numeric.combine(Numeric.top(), x).unwrap(), x);
    }

    #[test]
    fn order() {
        assert!(Bounded.leq(Plus, DoublePlus).unwrap());
        assert!(!Bounded.leq(DoublePlus, Plus).unwrap());
        let half = Sign::degree(0.5).unwrap();
        assert!(Numeric.leq(half, half).unwrap());
        assert!(BoundedDelta.leq(DoubleMinus, Minus).unwrap());
        assert!(BoundedDelta.leq(Minus, Plus).unwrap());
    }

    #[test]
    fn tops() {
        assert_eq!(Bounded.top(), DoublePlus);
        assert_eq!(BoundedDelta.top(), DoublePlus);
        assert_eq!(Generic.top(), Plus);
        assert_eq!(Delta.top(), Plus);
        assert_eq!(Numeric.top(), Sign::degree(1.0).unwrap());
    }

    #[test]
    fn flip_is_an_involution() {
        assert_eq!(Delta.flip(Plus).unwrap(), Minus);
        assert_eq!(BoundedDelta.flip(DoublePlus).unwrap(), DoubleMinus);
        assert_eq!(
            BoundedDelta.flip(BoundedDelta.flip(Plus).unwrap()).unwrap(),
            Plus
        );
        assert!(Bounded.flip(Plus).is_err());
        assert!(Numeric.flip(Numeric.top()).is_err());
    }

    #[test]
    fn wrong_dictionary_is_rejected() {
        assert!(Bounded.combine(Minus, Plus).is_err());
        assert!(Numeric.combine(Plus, Plus).is_err());
        assert!(Bounded.leq(Sign::degree(0.1).unwrap(), Plus).is_err());
        assert!(BoundedDelta.combine(Minus, Plus).is_err());
    }

    #[test]
    fn degree_rendering() {
        assert_eq!(format_degree(0.85), "0.85");
        assert_eq!(format_degree(0.7 + 0.5 - 0.7 * 0.5), "0.85");
        assert_eq!(format_degree(1.0), "1");
        assert_eq!(format_degree(0.0), "0");
    }

    #[test]
    fn bounded_nat_order() {
        assert!(Confidence::Count(1_000_000) < Confidence::Certain);
        assert!(Confidence::Count(1) < Confidence::Count(2));
        assert_eq!(Confidence::Count(1).leq(Confidence::Degree(0.5)), None);
    }
}
