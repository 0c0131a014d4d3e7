use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Twist parameters `(q_1, ..., q_m)` of the pretzel link
/// `K(1/q_1, ..., 1/q_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PretzelTuple(Vec<i64>);

impl PretzelTuple {
    pub fn new(q: Vec<i64>) -> Self {
        Self(q)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n` with `m = 2n + 1`, or `None` for an even length.
    pub fn n(&self) -> Option<usize> {
        (self.0.len() % 2 == 1).then_some(self.0.len() / 2)
    }

    /// 1-based slot of the even entry when there is exactly one.
    pub fn even_slot(&self) -> Option<usize> {
        let mut evens = self.0.iter().enumerate().filter(|(_, q)| *q % 2 == 0);
        match (evens.next(), evens.next()) {
            (Some((i, _)), None) => Some(i + 1),
            _ => None,
        }
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Cyclic rotation moving slot `k` (0-based) to the front.
    pub fn rotated(&self, k: usize) -> Self {
        let m = self.0.len();
        Self((0..m).map(|i| self.0[(i + k) % m]).collect())
    }

    /// All `2m` images under cyclic rotation and reversal.
    pub fn dihedral_images(&self) -> Vec<Self> {
        let m = self.0.len();
        let rev = self.reversed();
        (0..m)
            .map(|k| self.rotated(k))
            .chain((0..m).map(|k| rev.rotated(k)))
            .collect()
    }

    pub fn is_dihedral_equivalent(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.dihedral_images().iter().any(|t| t == other)
    }
}

impl fmt::Display for PretzelTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for PretzelTuple {
    type Err = Error;

    /// Parses a comma-separated integer list, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let q = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Usage(format!("bad tuple entry {:?}: {e}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(q))
    }
}

/// A broken family constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    EvenLength { len: usize },
    TooShort { len: usize },
    DuplicateEntry { value: i64 },
    NoEvenEntry,
    MoreThanOneEven { count: usize },
    EntryTooSmall { value: i64 },
    ClassificationHypothesis,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EvenLength { len } => write!(f, "tuple length {len} is even"),
            Self::TooShort { len } => write!(f, "tuple length {len} is below 5"),
            Self::DuplicateEntry { value } => write!(f, "entry {value} repeats"),
            Self::NoEvenEntry => write!(f, "no even entry"),
            Self::MoreThanOneEven { count } => write!(f, "{count} even entries"),
            Self::EntryTooSmall { value } => write!(f, "entry {value} is not above 6"),
            Self::ClassificationHypothesis => {
                write!(f, "sum of reciprocals exceeds m - 2")
            }
        }
    }
}

/// Checks the family constraints: odd length `m >= 5`, distinct entries,
/// exactly one even entry (in any slot), every entry above 6, and
/// `sum 1/q_i <= m - 2`.
pub fn validate(t: &PretzelTuple) -> Vec<Violation> {
    let q = t.entries();
    let m = q.len();
    let mut out = Vec::new();
    if m.is_multiple_of(2) {
        out.push(Violation::EvenLength { len: m });
    } else if m < 5 {
        out.push(Violation::TooShort { len: m });
    }
    let mut sorted = q.to_vec();
    sorted.sort_unstable();
    let mut reported = None;
    for w in sorted.windows(2) {
        if w[0] == w[1] && reported != Some(w[0]) {
            out.push(Violation::DuplicateEntry { value: w[0] });
            reported = Some(w[0]);
        }
    }
    match q.iter().filter(|x| *x % 2 == 0).count() {
        0 => out.push(Violation::NoEvenEntry),
        1 => {}
        count => out.push(Violation::MoreThanOneEven { count }),
    }
    for &x in q {
        if x <= 6 {
            out.push(Violation::EntryTooSmall { value: x });
        }
    }
    // The classification only concerns three or more tangles.
    let recip: f64 = q.iter().filter(|&&x| x != 0).map(|&x| 1.0 / x as f64).sum();
    if m >= 3 && (q.contains(&0) || recip > m as f64 - 2.0) {
        out.push(Violation::ClassificationHypothesis);
    }
    out
}

/// Lexicographically least tuple among the `2m` dihedral images.
pub fn canonical_form(t: &PretzelTuple) -> PretzelTuple {
    t.dihedral_images().into_iter().min().unwrap_or_else(|| t.clone())
}

/// Mutation `sigma_a`: swaps slots `a` and `a + 1` (1-based).
///
/// # Errors
/// [`Error::IndexOutOfRange`] unless `1 <= a <= m - 1`.
pub fn mutate(t: &PretzelTuple, a: usize) -> Result<PretzelTuple> {
    let m = t.len();
    if a == 0 || a >= m {
        return Err(Error::IndexOutOfRange {
            index: a,
            max: m.saturating_sub(1),
        });
    }
    let mut q = t.0.clone();
    q.swap(a - 1, a);
    Ok(PretzelTuple(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: &[i64]) -> PretzelTuple {
        PretzelTuple::new(q.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&t(&[8, 9, 11, 13, 15])).is_empty());
        assert_eq!(
            validate(&t(&[8, 9, 9, 13, 15])),
            vec![Violation::DuplicateEntry { value: 9 }]
        );
        assert_eq!(
            validate(&t(&[8, 10, 11, 13, 15])),
            vec![Violation::MoreThanOneEven { count: 2 }]
        );
        assert!(validate(&t(&[9, 11, 13, 15, 8])).is_empty());
        assert_eq!(validate(&t(&[8, 9])), vec![Violation::EvenLength { len: 2 }]);
        assert!(validate(&t(&[7, 9, 11, 13, 15])).contains(&Violation::NoEvenEntry));
        assert!(validate(&t(&[6, 9, 11, 13, 15])).contains(&Violation::EntryTooSmall { value: 6 }));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&t(&[9, 7, 8])), t(&[7, 8, 9]));
        let x = t(&[13, 8, 15, 9, 11]);
        assert_eq!(canonical_form(&x.reversed()), canonical_form(&x));
        assert_eq!(canonical_form(&canonical_form(&x)), canonical_form(&x));
    }

    #[test]
    fn mutate_examples() {
        let x = t(&[8, 9, 11, 13, 15]);
        assert_eq!(mutate(&x, 1).unwrap(), t(&[9, 8, 11, 13, 15]));
        assert_eq!(mutate(&x, 4).unwrap(), t(&[8, 9, 11, 15, 13]));
        assert_eq!(mutate(&mutate(&x, 2).unwrap(), 2).unwrap(), x);
        assert!(matches!(mutate(&x, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(mutate(&x, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parse_and_display() {
        let x: PretzelTuple = "(8, 9,11,13 ,15)".parse().unwrap();
        assert_eq!(x, t(&[8, 9, 11, 13, 15]));
        assert_eq!(x.to_string(), "(8, 9, 11, 13, 15)");
        assert!("8,,9".parse::<PretzelTuple>().is_err());
        assert!("8,x".parse::<PretzelTuple>().is_err());
    }

    #[test]
    fn even_slot() {
        assert_eq!(t(&[9, 11, 8, 13, 15]).even_slot(), Some(3));
        assert_eq!(t(&[8, 10, 11]).even_slot(), None);
    }
}
