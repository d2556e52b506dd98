//! Open intervals of exponents.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{ExtReal, Scalar, Q};

/// Open interval `(lo, hi)`; empty when `lo >= hi`.
///
/// Equality is equality of sets, so all empty intervals compare equal.
#[derive(Debug, Clone)]
pub struct QInterval<T> {
    pub lo: ExtReal<T>,
    pub hi: ExtReal<T>,
}

impl<T: Scalar> PartialEq for QInterval<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => true,
            (false, false) => self.lo == other.lo && self.hi == other.hi,
            _ => false,
        }
    }
}

impl<T: Scalar> QInterval<T> {
    pub fn new(lo: ExtReal<T>, hi: ExtReal<T>) -> Self {
        QInterval { lo, hi }
    }

    pub fn finite(lo: T, hi: T) -> Self {
        QInterval::new(ExtReal::Finite(lo), ExtReal::Finite(hi))
    }

    /// `(lo, +inf)`.
    pub fn above(lo: T) -> Self {
        QInterval::new(ExtReal::Finite(lo), ExtReal::PosInf)
    }

    pub fn empty() -> Self {
        QInterval::new(ExtReal::PosInf, ExtReal::NegInf)
    }

    pub fn is_empty(&self) -> bool {
        !self.lo.lt_strict(&self.hi)
    }

    pub fn contains(&self, x: &T) -> bool {
        let x = ExtReal::Finite(x.clone());
        self.lo.lt_strict(&x) && x.lt_strict(&self.hi)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let out = QInterval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        );
        if out.is_empty() {
            QInterval::empty()
        } else {
            out
        }
    }

    /// Set inclusion; the empty interval is contained in everything.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        match (self.is_empty(), other.is_empty()) {
            (true, _) => other.clone(),
            (_, true) => self.clone(),
            _ => QInterval::new(
                self.lo.clone().min(other.lo.clone()),
                self.hi.clone().max(other.hi.clone()),
            ),
        }
    }

    /// Union when it is itself an interval.
    pub fn union(&self, other: &Self) -> Option<Self> {
        if self.is_empty() || other.is_empty() {
            return Some(self.hull(other));
        }
        // Two open intervals sharing only an endpoint leave that point out.
        let (first, second) = if self.lo <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        if second.lo < first.hi {
            Some(self.hull(other))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> QInterval<f64> {
        let conv = |e: &ExtReal<T>| match e {
            ExtReal::NegInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(v.to_f64()),
            ExtReal::PosInf => ExtReal::PosInf,
        };
        QInterval::new(conv(&self.lo), conv(&self.hi))
    }
}

impl std::fmt::Display for QInterval<Q> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            f.write_str("empty")
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

/// Wire form: approximate endpoints for plotting plus exact strings.
#[derive(Serialize, Deserialize)]
struct IntervalDoc {
    lo: Option<f64>,
    hi: Option<f64>,
    lo_exact: String,
    hi_exact: String,
    empty: bool,
}

impl Serialize for QInterval<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let approx = |e: &ExtReal<Q>| e.finite().map(|v| v.to_f64());
        IntervalDoc {
            lo: approx(&self.lo),
            hi: approx(&self.hi),
            lo_exact: self.lo.to_exact_string(),
            hi_exact: self.hi.to_exact_string(),
            empty: self.is_empty(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QInterval<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = IntervalDoc::deserialize(d)?;
        let parse = |s: &str| -> Result<ExtReal<Q>> {
            ExtReal::parse(s).map_err(|e| Error::Parse(format!("interval endpoint: {e}")))
        };
        let lo = parse(&doc.lo_exact).map_err(serde::de::Error::custom)?;
        let hi = parse(&doc.hi_exact).map_err(serde::de::Error::custom)?;
        Ok(QInterval::new(lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn empty_intervals_are_equal() {
        assert_eq!(QInterval::finite(qi(5), qi(2)), QInterval::<Q>::empty());
        assert_ne!(QInterval::finite(qi(1), qi(2)), QInterval::finite(qi(1), qi(3)));
    }

    #[test]
    fn emptiness_and_membership() {
        let i = QInterval::finite(qi(1), qi(6));
        assert!(!i.is_empty());
        assert!(i.contains(&qi(3)));
        assert!(!i.contains(&qi(1)));
        assert!(!i.contains(&qi(6)));
        assert!(QInterval::finite(qi(4), qi(4)).is_empty());
        assert!(QInterval::<Q>::empty().is_empty());
    }

    #[test]
    fn intersection_of_example_intervals() {
        let q1 = QInterval::finite(qi(1), qi(6));
        let q2 = QInterval::above(q(10, 3));
        assert_eq!(q1.intersect(&q2), QInterval::finite(q(10, 3), qi(6)));
        let q1 = QInterval::finite(qi(1), qi(4));
        let q2 = QInterval::above(qi(4));
        assert!(q1.intersect(&q2).is_empty());
    }

    #[test]
    fn union_requires_overlap() {
        let a = QInterval::finite(qi(1), qi(3));
        let b = QInterval::finite(qi(3), qi(5));
        assert!(a.union(&b).is_none());
        let c = QInterval::finite(qi(2), qi(5));
        assert_eq!(a.union(&c), Some(QInterval::finite(qi(1), qi(5))));
    }

    #[test]
    fn serde_round_trip() {
        let i = QInterval::above(q(10, 3));
        let text = serde_json::to_string(&i).unwrap();
        assert!(text.contains("\"10/3\""));
        let back: QInterval<Q> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, i);
        let e: QInterval<Q> = QInterval::empty();
        let back: QInterval<Q> = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert!(back.is_empty());
    }
}
