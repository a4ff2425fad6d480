//! Exact orbits and the finite-`n` distribution functions.

use num_bigint::BigUint;
use num_traits::Signed;

use super::DfError;
use crate::piecewise::PiecewiseAffineMap;
use crate::rational::{ratio, Rational};

/// `[x, f(x), ..., f^{n-1}(x)]`.
pub fn orbit(f: &PiecewiseAffineMap, x: &Rational, n: usize) -> Result<Vec<Rational>, DfError> {
    let mut out = Vec::with_capacity(n);
    let mut y = x.clone();
    for i in 0..n {
        if !f.domain().contains(&y) {
            return Err(DfError::OrbitEscapedDomain {
                index: i,
                value: y.to_string(),
            });
        }
        if i + 1 < n {
            let next = f.eval(&y)?;
            out.push(y);
            y = next;
        } else {
            out.push(y.clone());
        }
    }
    Ok(out)
}

/// Two orbits and their pointwise distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPair {
    pub x: Rational,
    pub y: Rational,
    pub distances: Vec<Rational>,
}

impl OrbitPair {
    pub fn new(
        f: &PiecewiseAffineMap,
        x: &Rational,
        y: &Rational,
        n: usize,
    ) -> Result<Self, DfError> {
        let ox = orbit(f, x, n)?;
        let oy = orbit(f, y, n)?;
        let distances = ox.iter().zip(&oy).map(|(a, b)| (a - b).abs()).collect();
        Ok(OrbitPair {
            x: x.clone(),
            y: y.clone(),
            distances,
        })
    }
}

/// `#{i < n : d_i < t} / n`. Uses the first `n` distances.
pub fn df_n(distances: &[Rational], t: &Rational, n: usize) -> Result<Rational, DfError> {
    if n == 0 || n > distances.len() {
        return Err(DfError::NotEnoughDistances {
            wanted: n,
            available: distances.len(),
        });
    }
    let count = distances[..n].iter().filter(|d| *d < t).count();
    Ok(ratio(&BigUint::from(count), &BigUint::from(n)))
}

/// The same count over distances already sampled at the positions `p_1 .. p_n`.
pub fn df_seq(distances_at_p: &[Rational], t: &Rational, n: usize) -> Result<Rational, DfError> {
    df_n(distances_at_p, t, n)
}
