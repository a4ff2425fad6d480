//! Exact piecewise-affine maps with explicit endpoint ownership.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::interval::{IntervalSet, RationalInterval};
use super::PiecewiseError;
use crate::rational::{serde_rational, Rational};

/// `x -> slope * x + intercept` on an interval whose ends may be open or closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePiece {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    #[serde(with = "serde_rational")]
    pub slope: Rational,
    #[serde(with = "serde_rational")]
    pub intercept: Rational,
}

impl AffinePiece {
    pub fn closure(&self) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn owns(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        above && below
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

/// A function on a finite union of compact intervals, affine on each piece.
///
/// Exactly one piece owns every point of the domain. Images and preimages
/// are computed on piece closures, which is exact for maps continuous at
/// piece boundaries and otherwise may add the one-sided limit values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecewiseAffineMap {
    pieces: Vec<AffinePiece>,
    #[serde(skip)]
    domain: IntervalSet,
}

impl PiecewiseAffineMap {
    pub fn new(mut pieces: Vec<AffinePiece>) -> Result<Self, PiecewiseError> {
        if pieces.is_empty() {
            return Err(PiecewiseError::InvalidMap("no pieces".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.lo > p.hi {
                return Err(PiecewiseError::InvalidMap(format!("piece {i} has lo > hi")));
            }
            if p.lo == p.hi && !(p.lo_closed && p.hi_closed) {
                return Err(PiecewiseError::InvalidMap(format!(
                    "degenerate piece {i} must be closed"
                )));
            }
        }
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        if !pieces[0].lo_closed || !pieces[pieces.len() - 1].hi_closed {
            return Err(PiecewiseError::InvalidMap(
                "domain ends must be owned".into(),
            ));
        }
        for pair in pieces.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.hi > b.lo {
                return Err(PiecewiseError::InvalidMap(format!(
                    "pieces overlap on {} and {}",
                    a.closure(),
                    b.closure()
                )));
            }
            if a.hi == b.lo {
                if a.hi_closed == b.lo_closed {
                    return Err(PiecewiseError::InvalidMap(format!(
                        "boundary {} must be owned by exactly one piece",
                        a.hi
                    )));
                }
            } else if !(a.hi_closed && b.lo_closed) {
                return Err(PiecewiseError::InvalidMap(format!(
                    "domain component ending at {} is not compact",
                    a.hi
                )));
            }
        }
        let domain = IntervalSet::from_intervals(pieces.iter().map(AffinePiece::closure));
        Ok(PiecewiseAffineMap { pieces, domain })
    }

    /// Builds the map and checks it against a declared domain.
    pub fn with_domain(
        pieces: Vec<AffinePiece>,
        domain: &IntervalSet,
    ) -> Result<Self, PiecewiseError> {
        let f = Self::new(pieces)?;
        if &f.domain != domain {
            return Err(PiecewiseError::InvalidMap(format!(
                "pieces cover {} but the declared domain is {}",
                f.domain, domain
            )));
        }
        Ok(f)
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, PiecewiseError> {
        self.pieces
            .iter()
            .find(|p| p.owns(x))
            .map(|p| p.apply(x))
            .ok_or_else(|| PiecewiseError::OutOfDomain(x.to_string()))
    }

    pub fn image(&self, s: &IntervalSet) -> Result<IntervalSet, PiecewiseError> {
        if !self.domain.contains_set(s) {
            return Err(PiecewiseError::OutOfDomain(s.to_string()));
        }
        let mut parts = Vec::new();
        for piece in &self.pieces {
            for part in s.intersect_interval(&piece.closure()).parts() {
                parts.push(part.affine_image(&piece.slope, &piece.intercept));
            }
        }
        Ok(IntervalSet::from_intervals(parts))
    }

    /// `{x ∈ within : f(x) ∈ target}`.
    pub fn preimage_in(&self, target: &IntervalSet, within: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for piece in &self.pieces {
            for part in within.intersect_interval(&piece.closure()).parts() {
                if piece.is_constant() {
                    if target.contains(&piece.intercept) {
                        parts.push(part.clone());
                    }
                    continue;
                }
                for t in target.parts() {
                    let a = (&t.lo - &piece.intercept) / &piece.slope;
                    let b = (&t.hi - &piece.intercept) / &piece.slope;
                    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                    let solved = RationalInterval { lo, hi };
                    if let Some(x) = solved.intersect(part) {
                        parts.push(x);
                    }
                }
            }
        }
        IntervalSet::from_intervals(parts)
    }

    /// Boundaries between adjacent pieces where the two formulas disagree.
    pub fn discontinuities(&self) -> Vec<Rational> {
        self.pieces
            .windows(2)
            .filter(|pair| pair[0].hi == pair[1].lo)
            .filter(|pair| pair[0].apply(&pair[0].hi) != pair[1].apply(&pair[1].lo))
            .map(|pair| pair[0].hi.clone())
            .collect()
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuities().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::super::example32;
    use super::*;
    use crate::rational::{int, rat};

    fn iv(lo: Rational, hi: Rational) -> IntervalSet {
        IntervalSet::from(RationalInterval::new(lo, hi).unwrap())
    }

    #[test]
    fn eval_examples() {
        let f = example32::map();
        assert_eq!(f.eval(&int(0)).unwrap(), int(2));
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), rat(5, 2));
        assert_eq!(f.eval(&int(3)).unwrap(), int(0));
        assert_eq!(f.eval(&rat(1, 3)).unwrap(), rat(5, 2));
        assert_eq!(f.eval(&int(1)).unwrap(), int(3));
        assert!(matches!(
            f.eval(&int(4)),
            Err(PiecewiseError::OutOfDomain(_))
        ));
    }

    #[test]
    fn example_map_is_continuous() {
        assert!(example32::map().is_continuous());
    }

    #[test]
    fn image_examples() {
        let f = example32::map();
        assert_eq!(f.image(&iv(int(0), int(1))).unwrap(), iv(int(2), int(3)));
        assert_eq!(f.image(&iv(int(2), int(3))).unwrap(), iv(int(0), int(3)));
        assert_eq!(
            f.image(&iv(rat(2, 5), rat(3, 5))).unwrap(),
            IntervalSet::from(RationalInterval::point(rat(5, 2)))
        );
    }

    #[test]
    fn preimage_examples() {
        let f = example32::map();
        assert_eq!(
            f.preimage_in(&iv(int(2), int(3)), &iv(int(0), int(1))),
            iv(int(0), int(1))
        );
        assert_eq!(
            f.preimage_in(&iv(int(0), int(1)), &iv(int(2), int(3))),
            iv(rat(8, 3), int(3))
        );
        assert!(f
            .preimage_in(&iv(int(4), int(5)), &iv(int(0), int(3)))
            .is_empty());
    }

    // Oracle: classify dense rational samples by direct evaluation.
    #[test]
    fn image_and_preimage_agree_with_sampling() {
        let f = example32::map();
        let within = iv(int(0), int(3));
        let targets = [
            iv(int(2), int(3)),
            iv(int(0), int(1)),
            iv(rat(7, 3), rat(5, 2)),
            IntervalSet::from(RationalInterval::point(rat(5, 2))),
        ];
        let samples: Vec<Rational> = (0..=10_000).map(|k| rat(3 * k, 10_000)).collect();
        for target in &targets {
            let pre = f.preimage_in(target, &within);
            for x in &samples {
                let y = f.eval(x).unwrap();
                assert_eq!(
                    pre.contains(x),
                    target.contains(&y),
                    "x={x} target={target}"
                );
            }
        }
        let img = f.image(&iv(int(0), int(1))).unwrap();
        for x in samples.iter().filter(|x| **x <= int(1)) {
            assert!(img.contains(&f.eval(x).unwrap()));
        }
    }

    #[test]
    fn rejects_bad_piece_layouts() {
        let piece = |lo: i64, hi: i64, lc: bool, hc: bool| AffinePiece {
            lo: int(lo),
            hi: int(hi),
            lo_closed: lc,
            hi_closed: hc,
            slope: int(1),
            intercept: int(0),
        };
        assert!(PiecewiseAffineMap::new(vec![]).is_err());
        assert!(
            PiecewiseAffineMap::new(vec![piece(0, 1, true, true), piece(1, 2, true, true)])
                .is_err()
        );
        assert!(
            PiecewiseAffineMap::new(vec![piece(0, 1, true, false), piece(1, 2, false, true)])
                .is_err()
        );
        assert!(
            PiecewiseAffineMap::new(vec![piece(0, 2, true, true), piece(1, 3, false, true)])
                .is_err()
        );
        assert!(
            PiecewiseAffineMap::new(vec![piece(0, 1, true, false), piece(2, 3, true, true)])
                .is_err()
        );
        let two_components =
            PiecewiseAffineMap::new(vec![piece(0, 1, true, true), piece(2, 3, true, true)])
                .unwrap();
        assert_eq!(two_components.domain().parts().len(), 2);
        assert!(two_components.eval(&rat(3, 2)).is_err());
    }
}
