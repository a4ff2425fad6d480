//! Piecewise-affine interval maps: exact images and preimages, the strict
//! coupled-expansion verifier, and cylinder sets with their diameters.

mod certify;
mod config;
pub mod example32;
mod interval;
mod map;

use num_traits::Zero;
use thiserror::Error;

pub use certify::{
    verify_strict_coupled_expanding, CertificateReport, EscapeNote, RowCheck, Verdict,
};
pub use config::{MapConfig, PartitionConfig, PieceConfig};
pub use interval::{IntervalSet, RationalInterval};
pub use map::{AffinePiece, PiecewiseAffineMap};

use crate::rational::Rational;
use crate::symbolic::{format_symbols, is_admissible, Symbol};
use crate::transition::TransitionMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PiecewiseError {
    #[error("{0} is outside the domain of the map")]
    OutOfDomain(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("word {0} is not admissible")]
    NonAdmissibleWord(String),
    #[error("cylinder of word {0} is empty")]
    EmptyCylinder(String),
    #[error("depth {depth} exceeds prefix length {len}")]
    DepthTooLarge { depth: usize, len: usize },
    #[error("{0}")]
    Config(String),
}

/// The labelled sets `V_1, ..., V_m`; index `i` holds `V_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<IntervalSet>,
}

impl Partition {
    pub fn new(parts: Vec<IntervalSet>) -> Result<Self, PiecewiseError> {
        if parts.len() < 2 {
            return Err(PiecewiseError::InvalidPartition(
                "at least two sets required".into(),
            ));
        }
        if let Some(i) = parts.iter().position(IntervalSet::is_empty) {
            return Err(PiecewiseError::InvalidPartition(format!(
                "V_{} is empty",
                i + 1
            )));
        }
        Ok(Partition { parts })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, symbol: Symbol) -> &IntervalSet {
        &self.parts[symbol as usize - 1]
    }

    pub fn parts(&self) -> &[IntervalSet] {
        &self.parts
    }

    pub fn union(&self) -> IntervalSet {
        self.parts
            .iter()
            .fold(IntervalSet::empty(), |acc, p| acc.union(p))
    }

    /// First label whose set contains `x`.
    pub fn label_of(&self, x: &Rational) -> Option<Symbol> {
        self.parts
            .iter()
            .position(|p| p.contains(x))
            .map(|i| i as Symbol + 1)
    }
}

/// A map together with its partition and transition matrix: the data needed
/// to talk about cylinder sets `V_c`.
#[derive(Debug, Clone)]
pub struct CodedSystem {
    pub map: PiecewiseAffineMap,
    pub partition: Partition,
    pub matrix: TransitionMatrix,
}

impl CodedSystem {
    pub fn new(
        map: PiecewiseAffineMap,
        partition: Partition,
        matrix: TransitionMatrix,
    ) -> Result<Self, PiecewiseError> {
        if partition.len() != matrix.size() {
            return Err(PiecewiseError::InvalidPartition(format!(
                "{} sets for a {}x{} matrix",
                partition.len(),
                matrix.size(),
                matrix.size()
            )));
        }
        Ok(CodedSystem {
            map,
            partition,
            matrix,
        })
    }

    pub fn certify(&self) -> CertificateReport {
        verify_strict_coupled_expanding(&self.map, &self.partition, &self.matrix)
    }

    fn check_word(&self, w: &[Symbol]) -> Result<(), PiecewiseError> {
        match is_admissible(w, &self.matrix) {
            Ok(true) if !w.is_empty() => Ok(()),
            _ => Err(PiecewiseError::NonAdmissibleWord(format_symbols(w))),
        }
    }

    /// `V_w = ⋂_i f^{-i}(V_{w_i})`, computed backwards from the last symbol.
    pub fn cylinder(&self, w: &[Symbol]) -> Result<IntervalSet, PiecewiseError> {
        self.check_word(w)?;
        let mut set = self.partition.get(w[w.len() - 1]).clone();
        for &s in w[..w.len() - 1].iter().rev() {
            set = self.map.preimage_in(&set, self.partition.get(s));
            if set.is_empty() {
                break;
            }
        }
        if set.is_empty() {
            return Err(PiecewiseError::EmptyCylinder(format_symbols(w)));
        }
        Ok(set)
    }

    /// `diam V_{a_0 ... a_n}` for `n = 0 .. len-1`.
    pub fn cylinder_diameters(&self, prefix: &[Symbol]) -> Result<Vec<Rational>, PiecewiseError> {
        self.check_word(prefix)?;
        (1..=prefix.len())
            .map(|n| self.cylinder(&prefix[..n]).map(|c| c.diameter()))
            .collect()
    }

    /// Smallest number of leading symbols whose cylinder has diameter below
    /// `tau`, together with that diameter.
    pub fn depth_below(
        &self,
        prefix: &[Symbol],
        tau: &Rational,
    ) -> Result<Option<(usize, Rational)>, PiecewiseError> {
        self.check_word(prefix)?;
        for n in 1..=prefix.len() {
            let d = self.cylinder(&prefix[..n])?.diameter();
            if &d < tau {
                return Ok(Some((n, d)));
            }
        }
        Ok(None)
    }

    /// Midpoint of the convex hull of the cylinder of the first `depth` symbols.
    pub fn pick_representative(
        &self,
        prefix: &[Symbol],
        depth: usize,
    ) -> Result<Rational, PiecewiseError> {
        if depth == 0 || depth > prefix.len() {
            return Err(PiecewiseError::DepthTooLarge {
                depth,
                len: prefix.len(),
            });
        }
        let c = self.cylinder(&prefix[..depth])?;
        Ok(c.hull().expect("cylinder is nonempty").midpoint())
    }

    /// Labels visited by the first `n` iterates of `x` (`None` off the partition).
    pub fn itinerary(&self, x: &Rational, n: usize) -> Result<Vec<Option<Symbol>>, PiecewiseError> {
        let mut out = Vec::with_capacity(n);
        let mut y = x.clone();
        for i in 0..n {
            out.push(self.partition.label_of(&y));
            if i + 1 < n {
                y = self.map.eval(&y)?;
            }
        }
        Ok(out)
    }

    /// `max_{0 <= o < T} diam V_{a_o ... a_{o+k}}` for the periodic sequence
    /// `period^∞`, i.e. the largest diameter among its length-`k+1` windows.
    pub fn periodic_window_diameter(
        &self,
        period: &[Symbol],
        k: usize,
    ) -> Result<Rational, PiecewiseError> {
        let t = period.len();
        let mut worst = Rational::zero();
        for o in 0..t {
            let window: Vec<Symbol> = (0..=k).map(|i| period[(o + i) % t]).collect();
            let d = self.cylinder(&window)?.diameter();
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// Minimum pairwise distance between cylinders of distinct admissible
    /// words of length `l`.
    pub fn min_word_gap(&self, l: usize) -> Result<Rational, PiecewiseError> {
        let words = self
            .matrix
            .enumerate_admissible_words(l)
            .map_err(|e| PiecewiseError::Config(e.to_string()))?;
        let cylinders = words
            .iter()
            .map(|w| self.cylinder(w.symbols()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut best: Option<Rational> = None;
        for i in 0..cylinders.len() {
            for j in i + 1..cylinders.len() {
                let d = cylinders[i]
                    .distance(&cylinders[j])
                    .expect("nonempty cylinders");
                if best.as_ref().is_none_or(|b| &d < b) {
                    best = Some(d);
                }
            }
        }
        best.ok_or_else(|| {
            PiecewiseError::Config(format!("fewer than two admissible words of length {l}"))
        })
    }
}
