//! Counting positions by distance class, symbolically over block schedules
//! or directly over materialized prefixes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::window::{cyclic_window, DistanceBounds, WindowOracle};
use super::DfError;
use crate::rational::{ratio, serde_biguint, Rational};
use crate::scrambled::{BlockKind, Schedule};

/// Which times enter the distribution function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Only the starts of every repetition of `u`/`v` blocks (the `(p_k)`).
    Sequence,
    /// Every time `0, 1, 2, ...`.
    AllTimes,
}

/// Counts of positions per distance class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub n: BigUint,
    pub classes: BTreeMap<DistanceBounds, BigUint>,
}

impl Census {
    pub fn add(&mut self, class: DistanceBounds, count: BigUint) {
        if count.is_zero() {
            return;
        }
        self.n += &count;
        *self.classes.entry(class).or_default() += count;
    }

    /// Positions certainly at distance `< t`.
    pub fn near(&self, t: &Rational) -> BigUint {
        self.classes
            .iter()
            .filter(|(c, _)| c.near(t))
            .map(|(_, n)| n)
            .sum()
    }

    /// Positions certainly at distance `>= t`.
    pub fn far(&self, t: &Rational) -> BigUint {
        self.classes
            .iter()
            .filter(|(c, _)| c.far(t))
            .map(|(_, n)| n)
            .sum()
    }

    /// `[near / n, (n - far) / n]`, a bracket on the true `F^{(n)}(t)`.
    pub fn df_bounds(&self, t: &Rational) -> (Rational, Rational) {
        let near = self.near(t);
        let far = self.far(t);
        (ratio(&near, &self.n), ratio(&(&self.n - far), &self.n))
    }
}

/// Census state after a counted block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    /// Position of the block in the schedule.
    pub entry: usize,
    pub kind: BlockKind,
    pub index: usize,
    /// Positions below this have been counted.
    #[serde(with = "serde_biguint")]
    pub end: BigUint,
    #[serde(skip)]
    pub census: Census,
}

fn check_skeletons(a: &Schedule, b: &Schedule) -> Result<(), DfError> {
    let (sa, sb) = (a.skeleton(), b.skeleton());
    let n = sa.len().min(sb.len());
    if let Some(i) = (0..n).find(|&i| sa[i] != sb[i]) {
        return Err(DfError::SkeletonMismatch { entry: i });
    }
    Ok(())
}

/// Positions `p < limit` whose window of the oracle's length fits inside
/// both generated sequences.
fn position_limit(a: &Schedule, b: &Schedule, k: usize, limit: Option<&BigUint>) -> BigUint {
    let total = a.total_len().min(b.total_len()).clone();
    let fit = if &total + 1u32 >= BigUint::from(k) {
        total + 1u32 - k
    } else {
        BigUint::zero()
    };
    match limit {
        Some(l) if l < &fit => l.clone(),
        _ => fit,
    }
}

fn counted(kind: BlockKind, mode: Mode) -> bool {
    match mode {
        Mode::AllTimes => true,
        Mode::Sequence => matches!(kind, BlockKind::U | BlockKind::V),
    }
}

/// Closed-form census. Positions whose window stays inside a block are
/// grouped by their offset modulo the word length, giving one count per
/// offset; the at most `K - 1` positions per block whose window crosses into
/// the next block are evaluated one by one.
pub fn symbolic_census(
    a: &Schedule,
    b: &Schedule,
    oracle: &mut WindowOracle<'_>,
    mode: Mode,
    limit: Option<&BigUint>,
) -> Result<Vec<Checkpoint>, DfError> {
    check_skeletons(a, b)?;
    let k = oracle.window_len();
    let lim = position_limit(a, b, k, limit);
    let mut census = Census::default();
    let mut out = Vec::new();
    for (i, (ea, eb)) in a.entries().iter().zip(b.entries()).enumerate() {
        if ea.start >= lim {
            break;
        }
        if !counted(ea.kind, mode) {
            continue;
        }
        let wlen = ea.word.len();
        let end = ea.end();
        let stop = (&end).min(&lim).clone();
        // Windows starting below `inner` lie entirely inside the block.
        let inner_end = if end >= ea.start.clone() + k {
            &end + 1u32 - k
        } else {
            ea.start.clone()
        };
        let inner = (&inner_end).min(&stop).clone();
        let offsets = match mode {
            Mode::Sequence => 0..1,
            Mode::AllTimes => 0..wlen,
        };
        let span = &inner - &ea.start;
        for o in offsets {
            if span <= BigUint::from(o) {
                continue;
            }
            let count = (&span - o).div_ceil(&BigUint::from(wlen));
            let class = oracle.bounds(
                &cyclic_window(ea.word.symbols(), o, k),
                &cyclic_window(eb.word.symbols(), o, k),
            )?;
            census.add(class, count);
        }
        // Crossing windows: positions in [inner, stop).
        let mut p = inner.clone();
        if mode == Mode::Sequence {
            let rem = ((&p - &ea.start) % wlen)
                .to_usize()
                .expect("reduced modulo word length");
            if rem != 0 {
                p += wlen - rem;
            }
        }
        let step = if mode == Mode::Sequence { wlen } else { 1 };
        while p < stop {
            let class = oracle.bounds(&a.sequence().window(&p, k), &b.sequence().window(&p, k))?;
            census.add(class, BigUint::from(1u32));
            p += step;
        }
        out.push(Checkpoint {
            entry: i,
            kind: ea.kind,
            index: ea.index,
            end: stop,
            census: census.clone(),
        });
    }
    Ok(out)
}

/// Reference census: materialize both sequences and classify every counted
/// position by its literal windows.
pub fn direct_census(
    a: &Schedule,
    b: &Schedule,
    oracle: &mut WindowOracle<'_>,
    mode: Mode,
    limit: &BigUint,
    cap: usize,
) -> Result<Vec<Checkpoint>, DfError> {
    check_skeletons(a, b)?;
    let k = oracle.window_len();
    let lim = position_limit(a, b, k, Some(limit));
    let lim_usize = lim.to_usize().ok_or(DfError::TooLarge)?;
    let need = BigUint::from(lim_usize + k.saturating_sub(1));
    let sa = a.sequence().materialize(&need, cap)?.symbols;
    let sb = b.sequence().materialize(&need, cap)?.symbols;
    let mut census = Census::default();
    let mut out = Vec::new();
    for (i, e) in a.entries().iter().enumerate() {
        let start = e.start.to_usize().ok_or(DfError::TooLarge)?;
        if start >= lim_usize {
            break;
        }
        if !counted(e.kind, mode) {
            continue;
        }
        let end = e.end().to_usize().map_or(lim_usize, |x| x.min(lim_usize));
        let step = if mode == Mode::Sequence {
            e.word.len()
        } else {
            1
        };
        for p in (start..end).step_by(step) {
            let class = oracle.bounds(&sa[p..p + k], &sb[p..p + k])?;
            census.add(class, BigUint::from(1u32));
        }
        out.push(Checkpoint {
            entry: i,
            kind: e.kind,
            index: e.index,
            end: BigUint::from(end),
            census: census.clone(),
        });
    }
    Ok(out)
}
