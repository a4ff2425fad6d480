//! Finite-checkpoint evidence for the distributional chaos conditions.

use num_bigint::BigUint;
use serde::Serialize;

use super::census::Mode;
use super::curve::DfCurve;
use crate::rational::{rat, serde_biguint, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    #[serde(with = "serde_rational")]
    pub lo: Rational,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            hi: rat(98, 100),
            lo: rat(2, 100),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "D1")]
    D1,
    #[serde(rename = "D2")]
    D2,
    #[serde(rename = "D3")]
    D3,
    #[serde(rename = "seq-DC")]
    SeqDc,
    #[serde(rename = "none")]
    None,
}

/// A checkpoint where the lower curve is at least `hi` on the whole grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearWitness {
    #[serde(with = "serde_biguint")]
    pub n: BigUint,
    pub entry: usize,
    /// Smallest lower-curve value over the grid.
    #[serde(with = "serde_rational")]
    pub min_value: Rational,
}

/// A checkpoint and `s > 0` where the upper curve is at most `lo`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FarWitness {
    #[serde(with = "serde_biguint")]
    pub n: BigUint,
    pub entry: usize,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// A grid point where the smallest upper value over checkpoints lies below
/// the largest lower value, a finite stand-in for `F(t) < F*(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapWitness {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_rational")]
    pub min_upper: Rational,
    #[serde(with = "serde_rational")]
    pub max_lower: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub kind: VerdictKind,
    pub mode: Mode,
    pub thresholds: Thresholds,
    pub checkpoints: usize,
    pub near: Option<NearWitness>,
    pub far: Option<FarWitness>,
    pub gap: Option<GapWitness>,
}

/// Classifies a pair from its bracketed curve.
///
/// Witnesses are taken at the latest qualifying checkpoint, since the
/// conditions are about large `n`. `preferred_s` values are tried first when
/// looking for a far witness.
pub fn classify_pair(
    curve: &DfCurve,
    thresholds: &Thresholds,
    mode: Mode,
    preferred_s: &[Rational],
) -> PairVerdict {
    let near = curve.points.iter().rev().find_map(|p| {
        let min = p.lower.iter().min()?.clone();
        (min >= thresholds.hi).then(|| NearWitness {
            n: p.n.clone(),
            entry: p.entry,
            min_value: min,
        })
    });

    let mut order: Vec<usize> = preferred_s
        .iter()
        .filter_map(|s| curve.grid.iter().position(|t| t == s))
        .collect();
    let rest: Vec<usize> = (0..curve.grid.len())
        .rev()
        .filter(|i| !order.contains(i))
        .collect();
    order.extend(rest);
    let far = order
        .into_iter()
        .filter(|&i| curve.grid[i] > Rational::from_integer(0.into()))
        .find_map(|i| {
            curve
                .points
                .iter()
                .rev()
                .find(|p| p.upper[i] <= thresholds.lo)
                .map(|p| FarWitness {
                    n: p.n.clone(),
                    entry: p.entry,
                    s: curve.grid[i].clone(),
                    value: p.upper[i].clone(),
                })
        });

    let gap = (0..curve.grid.len()).find_map(|i| {
        let min_upper = curve.points.iter().map(|p| &p.upper[i]).min()?;
        let max_lower = curve.points.iter().map(|p| &p.lower[i]).max()?;
        (min_upper < max_lower).then(|| GapWitness {
            t: curve.grid[i].clone(),
            min_upper: min_upper.clone(),
            max_lower: max_lower.clone(),
        })
    });

    let kind = match (&near, &far, &gap) {
        (Some(_), Some(_), _) => match mode {
            Mode::Sequence => VerdictKind::SeqDc,
            Mode::AllTimes => VerdictKind::D1,
        },
        (Some(_), None, Some(_)) => VerdictKind::D2,
        (None, _, Some(_)) => VerdictKind::D3,
        _ => VerdictKind::None,
    };
    PairVerdict {
        kind,
        mode,
        thresholds: thresholds.clone(),
        checkpoints: curve.points.len(),
        near,
        far,
        gap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfmetrics::census::{Census, Checkpoint};
    use crate::dfmetrics::curve::t_grid;
    use crate::dfmetrics::orbit::df_n;
    use crate::dfmetrics::window::DistanceBounds;
    use crate::rational::int;
    use crate::scrambled::BlockKind;

    /// Exact distances as degenerate classes, checkpoint at each block end.
    fn curve_from_blocks(blocks: &[(i64, u64)], grid: Vec<Rational>) -> (DfCurve, Vec<Rational>) {
        let mut census = Census::default();
        let mut cps = Vec::new();
        let mut all = Vec::new();
        for (i, &(d, len)) in blocks.iter().enumerate() {
            census.add(
                DistanceBounds {
                    lo: int(d),
                    hi: int(d),
                },
                BigUint::from(len),
            );
            all.extend(std::iter::repeat_n(int(d), len as usize));
            cps.push(Checkpoint {
                entry: i,
                kind: BlockKind::Psi,
                index: i,
                end: BigUint::from(all.len()),
                census: census.clone(),
            });
        }
        (DfCurve::from_checkpoints(grid, &cps), all)
    }

    #[test]
    fn alternating_zero_two_blocks_give_d1() {
        // Block i has length 64 times everything before it.
        let mut blocks = vec![(0i64, 1u64)];
        let mut total = 1u64;
        for i in 1..4 {
            let len = 64 * total;
            blocks.push((if i % 2 == 1 { 2 } else { 0 }, len));
            total += len;
        }
        let grid = t_grid(&int(2), &int(3), 17);
        let (curve, all) = curve_from_blocks(&blocks, grid.clone());
        // Oracle: direct counting at every checkpoint.
        for p in &curve.points {
            let n = usize::try_from(&p.n).unwrap();
            for (t, v) in grid.iter().zip(&p.lower) {
                assert_eq!(&df_n(&all, t, n).unwrap(), v);
            }
            assert_eq!(p.lower, p.upper);
        }
        let v = classify_pair(&curve, &Thresholds::default(), Mode::AllTimes, &[int(2)]);
        assert_eq!(v.kind, VerdictKind::D1);
        assert_eq!(v.far.unwrap().s, int(2));
        assert!(v.near.unwrap().min_value >= rat(98, 100));
    }

    #[test]
    fn identical_points_give_none() {
        let (curve, _) = curve_from_blocks(
            &[(0, 10), (0, 100), (0, 1000)],
            t_grid(&int(1), &int(3), 17),
        );
        let v = classify_pair(&curve, &Thresholds::default(), Mode::AllTimes, &[]);
        assert_eq!(v.kind, VerdictKind::None);
        assert!(v.near.is_some() && v.far.is_none());
    }

    #[test]
    fn sequence_mode_reports_seq_dc() {
        let (curve, _) = curve_from_blocks(
            &[(0, 1), (2, 100), (0, 10_000)],
            t_grid(&int(2), &int(3), 17),
        );
        let v = classify_pair(&curve, &Thresholds::default(), Mode::Sequence, &[int(2)]);
        assert_eq!(v.kind, VerdictKind::SeqDc);
    }

    #[test]
    fn moderate_oscillation_is_d3() {
        let (curve, _) =
            curve_from_blocks(&[(2, 10), (0, 10), (2, 20)], t_grid(&int(2), &int(3), 17));
        let v = classify_pair(&curve, &Thresholds::default(), Mode::AllTimes, &[]);
        assert_eq!(v.kind, VerdictKind::D3);
        assert!(v.gap.is_some());
    }
}
