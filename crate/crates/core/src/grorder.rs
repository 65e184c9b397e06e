//! Gabriel-Roiter measures and their total order on finite subsets of ℕ.
//!
//! A measure is stored as a strictly increasing sequence of positive
//! integers. Two distinct sets `I`, `J` satisfy `I < J` when the least
//! element of their symmetric difference lies in `J`. In particular a proper
//! prefix is always smaller than any of its extensions, and the empty set is
//! below everything.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("measure entries must be strictly increasing, found {prev} followed by {next}")]
    NotIncreasing { prev: BigUint, next: BigUint },
    #[error("measure entries must be positive")]
    NonPositive,
    #[error("cannot extend {measure} by {value}: the new length must exceed the current maximum")]
    ExtendTooSmall { measure: String, value: BigUint },
    #[error("maximum of an empty family of measures")]
    EmptyFamily,
    #[error("malformed measure {0:?}")]
    Parse(String),
}

/// Compares two strictly increasing sequences under the GR order.
///
/// Generic over the entry type so that the oracle can run the same rule on
/// machine-sized lengths.
pub fn compare_sorted<T: Ord>(left: &[T], right: &[T]) -> Ordering {
    let mut l = left.iter();
    let mut r = right.iter();
    let (mut x, mut y) = (l.next(), r.next());
    loop {
        match (x, y) {
            (None, None) => return Ordering::Equal,
            // whatever remains belongs to one side only
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Equal => {
                    x = l.next();
                    y = r.next();
                }
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            },
        }
    }
}

/// `true` iff `prefix` is an initial segment of `seq` (equality included).
pub fn starts_with_sorted<T: PartialEq>(seq: &[T], prefix: &[T]) -> bool {
    seq.len() >= prefix.len() && seq[..prefix.len()] == *prefix
}

/// A Gabriel-Roiter measure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GrMeasure {
    entries: Vec<BigUint>,
}

impl GrMeasure {
    /// Validates that `entries` is a strictly increasing sequence of
    /// positive integers.
    pub fn new(entries: Vec<BigUint>) -> Result<Self, MeasureError> {
        if entries.first().is_some_and(|e| e.is_zero()) {
            return Err(MeasureError::NonPositive);
        }
        for w in entries.windows(2) {
            if w[0] >= w[1] {
                return Err(MeasureError::NotIncreasing {
                    prev: w[0].clone(),
                    next: w[1].clone(),
                });
            }
        }
        Ok(Self { entries })
    }

    /// The measure of the zero module.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self, MeasureError> {
        Self::new(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The largest entry, which is the length of the measured module.
    pub fn last(&self) -> Option<&BigUint> {
        self.entries.last()
    }

    /// `true` iff `self` starts with `prefix`: either they are equal or
    /// `prefix ≪ self`.
    pub fn starts_with(&self, prefix: &GrMeasure) -> bool {
        starts_with_sorted(&self.entries, &prefix.entries)
    }

    /// Appends a new maximum, the measure of a GR inclusion `X ⊂ M` with
    /// `|M| = length`.
    pub fn extend(&self, length: BigUint) -> Result<GrMeasure, MeasureError> {
        if length.is_zero() {
            return Err(MeasureError::NonPositive);
        }
        if let Some(last) = self.entries.last() {
            if *last >= length {
                return Err(MeasureError::ExtendTooSmall {
                    measure: self.to_string(),
                    value: length,
                });
            }
        }
        let mut entries = self.entries.clone();
        entries.push(length);
        Ok(GrMeasure { entries })
    }

    /// Drops the maximal entry; this is the measure every GR submodule must
    /// have.
    pub fn without_last(&self) -> GrMeasure {
        let mut entries = self.entries.clone();
        entries.pop();
        GrMeasure { entries }
    }

    /// Entries as machine integers, when they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| u64::try_from(e).ok()).collect()
    }
}

/// Free-function form of the order.
pub fn compare(left: &GrMeasure, right: &GrMeasure) -> Ordering {
    compare_sorted(&left.entries, &right.entries)
}

impl Ord for GrMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for GrMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The unique maximum of a nonempty family.
pub fn max_of<'a, I>(family: I) -> Result<GrMeasure, MeasureError>
where
    I: IntoIterator<Item = &'a GrMeasure>,
{
    family
        .into_iter()
        .max_by(|a, b| compare(a, b))
        .cloned()
        .ok_or(MeasureError::EmptyFamily)
}

impl fmt::Display for GrMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for GrMeasure {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| MeasureError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(GrMeasure::empty());
        }
        let entries = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(MeasureError::Parse(s.to_string()));
                }
                t.parse::<BigUint>()
                    .map_err(|_| MeasureError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GrMeasure::new(entries)
    }
}

impl Serialize for GrMeasure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GrMeasure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let entries = strings
            .iter()
            .map(|s| {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(serde::de::Error::custom(format!(
                        "not a decimal string: {s:?}"
                    )));
                }
                s.parse::<BigUint>().map_err(serde::de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        GrMeasure::new(entries).map_err(serde::de::Error::custom)
    }
}
