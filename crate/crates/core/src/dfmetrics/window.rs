//! Distance bounds between points coded by two windows.
//!
//! If `f^p(x)` lies in `V_{w_a}` and `f^p(y)` lies in `V_{w_b}`, then
//! `d(V_{w_a}, V_{w_b}) <= d(f^p x, f^p y) <= sup |V_{w_a} - V_{w_b}|`.
//! Every count in this module goes through that bracket, so no orbit has to
//! be computed.

use std::collections::HashMap;

use serde::Serialize;

use super::DfError;
use crate::piecewise::{CodedSystem, IntervalSet};
use crate::rational::{serde_rational, Rational};
use crate::symbolic::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DistanceBounds {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl DistanceBounds {
    /// Certainly `d < t`.
    pub fn near(&self, t: &Rational) -> bool {
        &self.hi < t
    }

    /// Certainly `d >= t`.
    pub fn far(&self, t: &Rational) -> bool {
        &self.lo >= t
    }

    pub fn contains(&self, d: &Rational) -> bool {
        &self.lo <= d && d <= &self.hi
    }
}

/// Cached cylinder computations for windows of a fixed length.
pub struct WindowOracle<'a> {
    system: &'a CodedSystem,
    len: usize,
    cylinders: HashMap<Vec<Symbol>, IntervalSet>,
    pairs: HashMap<(Vec<Symbol>, Vec<Symbol>), DistanceBounds>,
}

impl<'a> WindowOracle<'a> {
    pub fn new(system: &'a CodedSystem, len: usize) -> Self {
        WindowOracle {
            system,
            len,
            cylinders: HashMap::new(),
            pairs: HashMap::new(),
        }
    }

    pub fn window_len(&self) -> usize {
        self.len
    }

    pub fn system(&self) -> &'a CodedSystem {
        self.system
    }

    fn cylinder(&mut self, w: &[Symbol]) -> Result<IntervalSet, DfError> {
        if let Some(c) = self.cylinders.get(w) {
            return Ok(c.clone());
        }
        let c = self.system.cylinder(w)?;
        self.cylinders.insert(w.to_vec(), c.clone());
        Ok(c)
    }

    pub fn bounds(&mut self, a: &[Symbol], b: &[Symbol]) -> Result<DistanceBounds, DfError> {
        if a.len() != self.len || b.len() != self.len {
            return Err(DfError::WindowLength {
                expected: self.len,
                got: a.len().min(b.len()),
            });
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(d) = self.pairs.get(&key) {
            return Ok(d.clone());
        }
        let ca = self.cylinder(a)?;
        let cb = self.cylinder(b)?;
        let d = DistanceBounds {
            lo: ca.distance(&cb).expect("cylinders are nonempty"),
            hi: ca.max_distance(&cb).expect("cylinders are nonempty"),
        };
        self.pairs.insert(key, d.clone());
        Ok(d)
    }

    /// Number of distinct window pairs evaluated so far.
    pub fn evaluated(&self) -> usize {
        self.pairs.len()
    }
}

/// `len` symbols of `w^∞` starting at offset `o`.
pub fn cyclic_window(w: &[Symbol], o: usize, len: usize) -> Vec<Symbol> {
    (0..len).map(|i| w[(o + i) % w.len()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::example32;
    use crate::rational::{int, rat};

    #[test]
    fn bounds_for_gadget_words() {
        let sys = example32::system();
        let mut o = WindowOracle::new(&sys, 4);
        let d = o.bounds(&[1, 2, 1, 2], &[1, 2, 2, 2]).unwrap();
        // [7/9, 1] against [4/27, 2/9].
        assert_eq!(
            d,
            DistanceBounds {
                lo: rat(5, 9),
                hi: rat(23, 27)
            }
        );
        let same = o.bounds(&[1, 2, 1, 2], &[1, 2, 1, 2]).unwrap();
        assert_eq!(
            same,
            DistanceBounds {
                lo: int(0),
                hi: rat(2, 9)
            }
        );
        assert!(same.near(&rat(1, 4)) && !same.near(&rat(2, 9)));
        assert!(d.far(&rat(5, 9)) && !d.far(&rat(5, 8)));
        assert_eq!(o.evaluated(), 2);
        assert!(o.bounds(&[1, 2], &[1, 2]).is_err());
    }

    #[test]
    fn cyclic_windows() {
        assert_eq!(cyclic_window(&[1, 2, 2], 2, 5), vec![2, 1, 2, 2, 1]);
    }
}
