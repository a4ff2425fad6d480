//! Distribution-function curves over a `t` grid at a list of checkpoints.

use std::io;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::census::Checkpoint;
use crate::rational::{approx, from_f64_decimal, int, serde_biguint, serde_rational_vec, Rational};

pub const DEFAULT_GRID_POINTS: usize = 17;

/// Geometric grid of `points` values from `d0 / 8` to `2 * width`, with the
/// interior points rounded to six decimals and `d0` itself inserted.
pub fn t_grid(d0: &Rational, width: &Rational, points: usize) -> Vec<Rational> {
    let lo = d0 / int(8);
    let hi = width * int(2);
    let mut grid = vec![lo.clone()];
    if points >= 2 {
        let (a, b) = (approx(&lo), approx(&hi));
        let ratio = (b / a).powf(1.0 / (points - 1) as f64);
        for i in 1..points - 1 {
            let t = from_f64_decimal(a * ratio.powi(i as i32), 6);
            if t > lo && t < hi {
                grid.push(t);
            }
        }
        grid.push(hi);
    }
    if d0 > &Rational::zero() {
        grid.push(d0.clone());
    }
    grid.sort();
    grid.dedup();
    grid
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    #[serde(with = "serde_biguint")]
    pub n: BigUint,
    pub entry: usize,
    /// Certified lower bound on `F^{(n)}(t)` per grid point.
    #[serde(with = "serde_rational_vec")]
    pub lower: Vec<Rational>,
    /// Certified upper bound on `F^{(n)}(t)` per grid point.
    #[serde(with = "serde_rational_vec")]
    pub upper: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DfCurve {
    #[serde(with = "serde_rational_vec")]
    pub grid: Vec<Rational>,
    pub points: Vec<CurvePoint>,
}

impl DfCurve {
    pub fn from_checkpoints(grid: Vec<Rational>, checkpoints: &[Checkpoint]) -> Self {
        let points = checkpoints
            .iter()
            .filter(|c| !c.census.n.is_zero())
            .map(|c| {
                let (lower, upper) = grid.iter().map(|t| c.census.df_bounds(t)).unzip();
                CurvePoint {
                    n: c.census.n.clone(),
                    entry: c.entry,
                    lower,
                    upper,
                }
            })
            .collect();
        DfCurve { grid, points }
    }

    /// Writes `n,t,value` rows for the lower (`upper = false`) or upper curve.
    pub fn write_csv<W: io::Write>(&self, out: W, upper: bool) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "t", "value"])?;
        for p in &self.points {
            let values = if upper { &p.upper } else { &p.lower };
            for (t, v) in self.grid.iter().zip(values) {
                w.write_record([p.n.to_string(), t.to_string(), v.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
