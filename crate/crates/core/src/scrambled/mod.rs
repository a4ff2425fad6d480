//! The two scrambled-set constructions and their parameter families.

mod alpha;
mod params;
mod phi1;
mod phi2;
mod schedule;

use thiserror::Error;

pub use alpha::{minimal_period, recurrence_indices, AlphaRule, DEFAULT_SCAN_BUDGET};
pub use params::{chunk_of, disagreement_positions, scrambled_params, ParamRule, OMEGA_LEN};
pub use phi1::{phi1, Phi1Context};
pub use phi2::{phi2, Phi2Context};
pub use schedule::{BlockKind, Extent, PSequence, Schedule, ScheduleEntry, SkeletonEntry};

use crate::symbolic::{Symbol, SymbolicError};
use crate::transition::TransitionError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScrambledError {
    #[error("symbol {symbol} does not recur in alpha within {budget} symbols")]
    NotRecurrent { symbol: Symbol, budget: usize },
    #[error("parameter has no symbol at index {index}")]
    InsufficientParameter { index: usize },
    #[error("word pair gadget is not admissible: {0}")]
    NonAdmissibleGadget(String),
    #[error("alpha is not admissible at position {position}")]
    NonAdmissibleAlpha { position: usize },
    #[error("this construction needs a purely periodic alpha such as (12)")]
    PeriodRequired,
    #[error("declared period {declared} but the minimal period is {actual}")]
    PeriodMismatch { declared: usize, actual: usize },
    #[error("alpha needs {needed} symbols but only {available} are known")]
    AlphaTooShort { needed: usize, available: usize },
    #[error("alpha is empty")]
    EmptyAlpha,
    #[error("cannot parse alpha '{0}'")]
    InvalidAlpha(String),
    #[error("the exponent cap must be positive")]
    InvalidCap,
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
