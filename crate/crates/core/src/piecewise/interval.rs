//! Closed rational intervals and finite unions of them.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{serde_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl RationalInterval {
    /// `None` when `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        RationalInterval::new(lo, hi)
    }

    /// Distance between the sets, 0 when they meet.
    pub fn distance(&self, other: &RationalInterval) -> Rational {
        if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            Rational::zero()
        }
    }

    /// Image under `x -> slope * x + intercept`.
    pub fn affine_image(&self, slope: &Rational, intercept: &Rational) -> RationalInterval {
        let a = slope * &self.lo + intercept;
        let b = slope * &self.hi + intercept;
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite union of closed intervals, kept sorted with overlapping or
/// touching components merged.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    parts: Vec<RationalInterval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_interval(i: RationalInterval) -> Self {
        IntervalSet { parts: vec![i] }
    }

    pub fn from_intervals(parts: impl IntoIterator<Item = RationalInterval>) -> Self {
        let mut parts: Vec<RationalInterval> = parts.into_iter().collect();
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut merged: Vec<RationalInterval> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => merged.push(p),
            }
        }
        IntervalSet { parts: merged }
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(x) = a.intersect(b) {
                out.push(x);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    pub fn intersect_interval(&self, other: &RationalInterval) -> IntervalSet {
        self.intersect(&IntervalSet::from_interval(other.clone()))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Set inclusion `self ⊇ other`.
    pub fn contains_set(&self, other: &IntervalSet) -> bool {
        other
            .parts
            .iter()
            .all(|q| self.parts.iter().any(|p| p.contains_interval(q)))
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<RationalInterval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(RationalInterval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    /// Convex-hull width; an upper bound on the metric diameter that equals
    /// it for connected sets. Empty sets report 0.
    pub fn diameter(&self) -> Rational {
        self.hull()
            .map(|h| h.width())
            .unwrap_or_else(Rational::zero)
    }

    /// Set distance `inf |x - y|`; `None` if either set is empty.
    pub fn distance(&self, other: &IntervalSet) -> Option<Rational> {
        self.parts
            .iter()
            .flat_map(|p| other.parts.iter().map(move |q| p.distance(q)))
            .min()
    }

    /// `sup |x - y|` over both sets; `None` if either set is empty.
    pub fn max_distance(&self, other: &IntervalSet) -> Option<Rational> {
        let a = self.hull()?;
        let b = other.hull()?;
        let d1 = (&b.hi - &a.lo).abs();
        let d2 = (&a.hi - &b.lo).abs();
        Some(d1.max(d2))
    }

    /// Whether the interiors intersect, i.e. the sets share a subinterval of
    /// positive length.
    pub fn interiors_meet(&self, other: &IntervalSet) -> bool {
        self.intersect(other).parts.iter().any(|p| p.lo < p.hi)
    }

    pub fn total_length(&self) -> Rational {
        self.parts.iter().map(|p| p.width()).sum()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(" ∪ "))
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<RationalInterval> for IntervalSet {
    fn from(i: RationalInterval) -> Self {
        IntervalSet::from_interval(i)
    }
}
