//! The bundled two-piece example on `[0, 3]`:
//!
//! ```text
//! f(x) = 3/2 x + 2    on [0, 1/3]
//!        5/2          on (1/3, 2/3]
//!        3/2 x + 3/2  on (2/3, 1]
//!        3            on (1, 2]
//!        -3 x + 9     on (2, 3]
//! ```
//!
//! with `V_1 = [0, 1]`, `V_2 = [2, 3]` and `A = [[0, 1], [1, 1]]`.

use super::{
    AffinePiece, CodedSystem, IntervalSet, Partition, PiecewiseAffineMap, RationalInterval,
};
use crate::rational::{int, rat, Rational};
use crate::transition::TransitionMatrix;

/// Combined config (matrix, map, partition, alpha) in the CLI file format.
pub const CONFIG_JSON: &str = include_str!("../../data/example32.json");

fn piece(
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    slope: Rational,
    intercept: Rational,
) -> AffinePiece {
    AffinePiece {
        lo,
        hi,
        lo_closed,
        hi_closed: true,
        slope,
        intercept,
    }
}

pub fn map() -> PiecewiseAffineMap {
    PiecewiseAffineMap::new(vec![
        piece(int(0), rat(1, 3), true, rat(3, 2), int(2)),
        piece(rat(1, 3), rat(2, 3), false, int(0), rat(5, 2)),
        piece(rat(2, 3), int(1), false, rat(3, 2), rat(3, 2)),
        piece(int(1), int(2), false, int(0), int(3)),
        piece(int(2), int(3), false, int(-3), int(9)),
    ])
    .expect("bundled map is valid")
}

pub fn partition() -> Partition {
    let v = |lo, hi| IntervalSet::from(RationalInterval::new(int(lo), int(hi)).unwrap());
    Partition::new(vec![v(0, 1), v(2, 3)]).expect("bundled partition is valid")
}

pub fn matrix() -> TransitionMatrix {
    TransitionMatrix::from_rows(&[vec![0, 1], vec![1, 1]]).expect("bundled matrix is valid")
}

pub fn system() -> CodedSystem {
    CodedSystem::new(map(), partition(), matrix()).expect("bundled system is consistent")
}
