//! The ratio bounds used to show the limits are 1 and 0, evaluated exactly
//! on a schedule's own exponents.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::rational::{from_biguint, inv_pow2, serde_biguint, serde_rational, Rational};
use crate::scrambled::{BlockKind, Schedule};

/// `s / (2^{-k+1} s + s - 1)`: near fraction after `s_k` shared repetitions.
pub fn seq_near_bound(s: &BigUint, k: usize) -> Rational {
    let s = from_biguint(s);
    let head = &s * inv_pow2(k as u64 - 1);
    &s / (head + &s - Rational::one())
}

/// `(2^{-q+1} s - 1) / (2^{-q+1} s + s - 1)`: near fraction after `s_q`
/// opposing repetitions.
pub fn seq_far_bound(s: &BigUint, q: usize) -> Rational {
    let s = from_biguint(s);
    let head = &s * inv_pow2(q as u64 - 1);
    (&head - Rational::one()) / (head + &s - Rational::one())
}

/// `(p - k) / (p (1 + 2^{-i}) + T)`: near fraction at the end of `B_{p_i} B̄_{p_i}`.
pub fn periodic_near_bound(p: &BigUint, i: usize, k: usize, period: usize) -> Rational {
    let p = from_biguint(p);
    let num = &p - Rational::from_integer(k.into());
    let den = &p * (Rational::one() + inv_pow2(i as u64)) + Rational::from_integer(period.into());
    num / den
}

/// `(2^{-r} m + l - 1) / (m l + 2^{-r} m)`: near fraction at the end of
/// opposing `u^{m_r}` / `v^{m_r}` blocks.
pub fn periodic_far_bound(m: &BigUint, r: usize, l: usize) -> Rational {
    let m = from_biguint(m);
    let head = &m * inv_pow2(r as u64);
    let l = Rational::from_integer(l.into());
    (&head + &l - Rational::one()) / (&m * &l + head)
}

/// The scheduled value with global index `i`: the exponent `s_i` or `m_i`,
/// or the length `p_i` of a `B` block.
pub fn scheduled_value(schedule: &Schedule, i: usize) -> Option<BigUint> {
    let entries: Vec<_> = schedule.entries().iter().filter(|e| e.index == i).collect();
    match entries.first()?.kind {
        BlockKind::B => Some(entries.iter().map(|e| e.len()).sum()),
        _ => Some(entries[0].exponent.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub j: usize,
    #[serde(with = "serde_biguint")]
    pub s: BigUint,
    #[serde(with = "serde_rational")]
    pub near: Rational,
    #[serde(with = "serde_rational")]
    pub far: Rational,
}

/// Near and far bounds at checkpoints `j` in `range`, reading `s_j` from
/// the schedule.
pub fn seq_bound_table(
    schedule: &Schedule,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<BoundRow> {
    range
        .filter_map(|j| {
            let s = scheduled_value(schedule, j)?;
            Some(BoundRow {
                j,
                near: seq_near_bound(&s, j),
                far: seq_far_bound(&s, j),
                s,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{pow2, rat};

    #[test]
    fn closed_forms() {
        let s = BigUint::from(640u32);
        assert_eq!(seq_near_bound(&s, 7), rat(640, 649));
        assert_eq!(seq_far_bound(&s, 7), rat(9, 649));
        assert_eq!(
            periodic_near_bound(&BigUint::from(72u32), 2, 2, 2),
            rat(70, 92)
        );
        assert_eq!(
            periodic_far_bound(&BigUint::from(736u32), 3, 4),
            rat(95, 3036)
        );
    }

    #[test]
    fn large_s_approaches_the_limit() {
        let s = pow2(200);
        let near = seq_near_bound(&s, 7);
        assert!(near > rat(64, 65) && near < rat(64, 65) + rat(1, 1_000_000));
    }
}
