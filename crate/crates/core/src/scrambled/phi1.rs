//! The sequence-DC construction
//! `φ(c) = v_{c_0}^{s_1} u_1^{s_2} v_{c_1}^{s_3} v_{c_2}^{s_4} u_1^{s_5} u_2^{s_6} ...`.

use num_bigint::BigUint;

use super::alpha::{recurrence_indices, AlphaRule, DEFAULT_SCAN_BUDGET};
use super::params::ParamRule;
use super::schedule::{reached, scheduled_exponent, BlockKind, Extent, Schedule, ScheduleEntry};
use super::ScrambledError;
use crate::symbolic::{Symbol, Word};
use crate::transition::{TransitionMatrix, WordPairGadget};

#[derive(Debug, Clone)]
pub struct Phi1Context {
    pub matrix: TransitionMatrix,
    /// `α` after rotation, so that `a_0` is its most frequent symbol.
    pub alpha: AlphaRule,
    /// How far the input rule was shifted to obtain `alpha`.
    pub rotation: usize,
    pub a0: Symbol,
    pub gadget: WordPairGadget,
    pub cap: Option<BigUint>,
    pub scan_budget: usize,
}

impl Phi1Context {
    pub fn new(
        matrix: &TransitionMatrix,
        alpha: &AlphaRule,
        cap: Option<BigUint>,
    ) -> Result<Self, ScrambledError> {
        Self::with_budget(matrix, alpha, cap, DEFAULT_SCAN_BUDGET)
    }

    pub fn with_budget(
        matrix: &TransitionMatrix,
        alpha: &AlphaRule,
        cap: Option<BigUint>,
        scan_budget: usize,
    ) -> Result<Self, ScrambledError> {
        if cap.as_ref().is_some_and(|c| c == &BigUint::ZERO) {
            return Err(ScrambledError::InvalidCap);
        }
        alpha.check_admissible(matrix, scan_budget)?;
        let (alpha, rotation) = alpha.normalized(scan_budget)?;
        let a0 = alpha.symbol_at(0).ok_or(ScrambledError::EmptyAlpha)?;
        recurrence_indices(&alpha, a0, 1, scan_budget)?;
        let gadget = matrix.find_equal_length_pair(a0)?;
        if !gadget.validate(matrix) {
            return Err(ScrambledError::NonAdmissibleGadget(format!("{gadget:?}")));
        }
        Ok(Phi1Context {
            matrix: matrix.clone(),
            alpha,
            rotation,
            a0,
            gadget,
            cap,
            scan_budget,
        })
    }

    /// `(ν_1, ..., ν_k)`.
    pub fn nu(&self, k: usize) -> Result<Vec<usize>, ScrambledError> {
        recurrence_indices(&self.alpha, self.a0, k, self.scan_budget)
    }

    /// `u_1, ..., u_k` with `u_j = (a_0 ... a_{ν_j - 1})`.
    pub fn u_words(&self, k: usize) -> Result<Vec<Word>, ScrambledError> {
        self.nu(k)?
            .into_iter()
            .map(|n| Ok(Word::new(self.alpha.prefix(n)?)?))
            .collect()
    }
}

pub fn phi1(c: &ParamRule, ctx: &Phi1Context, extent: &Extent) -> Result<Schedule, ScrambledError> {
    let mut schedule = Schedule::new();
    let mut scheduled = 0usize;
    let mut c_index = 0usize;
    let mut u: Vec<Word> = Vec::new();
    let cap = ctx.cap.as_ref();

    let mut add = |schedule: &mut Schedule, stage, kind, word: Word, param, u_index| {
        scheduled += 1;
        let (exponent, capped) = scheduled_exponent(scheduled - 1, schedule.total_len(), cap);
        schedule.push(ScheduleEntry {
            stage,
            index: scheduled,
            kind,
            word,
            exponent,
            start: BigUint::ZERO,
            capped,
            param,
            u_index,
        });
        reached(extent, schedule.total_len(), scheduled)
    };

    for stage in 1.. {
        for _ in 0..stage {
            let sym = c
                .get(c_index)
                .ok_or(ScrambledError::InsufficientParameter { index: c_index })?;
            c_index += 1;
            let word = ctx.gadget.select(sym).clone();
            if add(&mut schedule, stage, BlockKind::V, word, Some(sym), None) {
                return Ok(schedule);
            }
        }
        if u.len() < stage {
            u = ctx.u_words(stage)?;
        }
        for (k, word) in u.iter().enumerate().take(stage) {
            if add(
                &mut schedule,
                stage,
                BlockKind::U,
                word.clone(),
                None,
                Some(k + 1),
            ) {
                return Ok(schedule);
            }
        }
    }
    unreachable!("stage loop only exits by returning")
}
