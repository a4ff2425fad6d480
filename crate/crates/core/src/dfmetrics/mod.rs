//! Distribution functions: exact orbits, certified counting over block
//! schedules, curves and pair classification.

mod bounds;
mod census;
mod classify;
mod curve;
mod orbit;
mod pipeline;
mod window;

use thiserror::Error;

pub use bounds::{
    periodic_far_bound, periodic_near_bound, scheduled_value, seq_bound_table, seq_far_bound,
    seq_near_bound, BoundRow,
};
pub use census::{direct_census, symbolic_census, Census, Checkpoint, Mode};
pub use classify::{
    classify_pair, FarWitness, GapWitness, NearWitness, PairVerdict, Thresholds, VerdictKind,
};
pub use curve::{t_grid, CurvePoint, DfCurve, DEFAULT_GRID_POINTS};
pub use orbit::{df_n, df_seq, orbit, OrbitPair};
pub use pipeline::{
    analyze_phi1_pair, analyze_phi2_pair, gadget_gap, orbit_check, phi1_window_len,
    phi2_window_len, DfOptions, OrbitCheck, PairAnalysis, MAX_WINDOW_LEN,
};
pub use window::{cyclic_window, DistanceBounds, WindowOracle};

use crate::piecewise::PiecewiseError;
use crate::scrambled::ScrambledError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DfError {
    #[error("orbit left the domain at step {index} (value {value})")]
    OrbitEscapedDomain { index: usize, value: String },
    #[error("asked for {wanted} distances but only {available} are available")]
    NotEnoughDistances { wanted: usize, available: usize },
    #[error("schedules differ in shape at entry {entry}")]
    SkeletonMismatch { entry: usize },
    #[error("window of length {got} given to an oracle for length {expected}")]
    WindowLength { expected: usize, got: usize },
    #[error(
        "no window up to length {} has cylinder diameter below {target}",
        MAX_WINDOW_LEN
    )]
    WindowNotFound { target: String },
    #[error("position range too large to materialize")]
    TooLarge,
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
    #[error(transparent)]
    Scrambled(#[from] ScrambledError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
