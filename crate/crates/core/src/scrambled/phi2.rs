//! The type-1 construction
//! `φ(c) = a_0 C ψ(c_0)^{m_1} B_{p_2} B̄_{p_2} C ψ(c_1)^{m_3} ψ(c_2)^{m_4} B_{p_5} B̄_{p_5} C ...`
//! over a periodic `α`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::alpha::AlphaRule;
use super::params::ParamRule;
use super::schedule::{reached, scheduled_exponent, BlockKind, Extent, Schedule, ScheduleEntry};
use super::ScrambledError;
use crate::symbolic::{Symbol, Word};
use crate::transition::{TransitionMatrix, WordPairGadget};

#[derive(Debug, Clone)]
pub struct Phi2Context {
    pub matrix: TransitionMatrix,
    /// One minimal period `(a_0 ... a_{T-1})` of `α`.
    pub period: Word,
    pub a0: Symbol,
    /// `ψ(1) = u = v1`, `ψ(2) = v = v2`.
    pub gadget: WordPairGadget,
    pub connector: Word,
    pub cap: Option<BigUint>,
}

impl Phi2Context {
    /// `declared_period`, when given, must equal the minimal period of `alpha`.
    pub fn new(
        matrix: &TransitionMatrix,
        alpha: &AlphaRule,
        declared_period: Option<usize>,
        cap: Option<BigUint>,
    ) -> Result<Self, ScrambledError> {
        if cap.as_ref().is_some_and(|c| c == &BigUint::ZERO) {
            return Err(ScrambledError::InvalidCap);
        }
        let t = alpha
            .minimal_period()
            .ok_or(ScrambledError::PeriodRequired)?;
        if let Some(declared) = declared_period {
            if declared != t {
                return Err(ScrambledError::PeriodMismatch {
                    declared,
                    actual: t,
                });
            }
        }
        alpha.check_admissible(matrix, t + 1)?;
        let period = Word::new(alpha.prefix(t)?)?;
        let a0 = period.first();
        let gadget = matrix.find_equal_length_pair(a0)?;
        if !gadget.validate(matrix) {
            return Err(ScrambledError::NonAdmissibleGadget(format!("{gadget:?}")));
        }
        let connector = matrix.find_connector(a0)?;
        Ok(Phi2Context {
            matrix: matrix.clone(),
            period,
            a0,
            gadget,
            connector,
            cap,
        })
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn u(&self) -> &Word {
        &self.gadget.v1
    }

    pub fn v(&self) -> &Word {
        &self.gadget.v2
    }

    /// `B̄_p = (a_{q+1} ... a_T)` with `q = (p - 1) mod T`; empty when
    /// `a_{p-1} = a_0`. It ends at `a_T = a_0`.
    pub fn b_bar(&self, p: &BigUint) -> Option<Word> {
        let t = self.period_len();
        let q = ((p - 1u32) % t)
            .to_usize()
            .expect("reduced modulo the period");
        let symbols = self.period.symbols();
        if symbols[q] == self.a0 {
            return None;
        }
        let tail: Vec<Symbol> = (q + 1..=t).map(|i| symbols[i % t]).collect();
        Some(Word::new(tail).expect("q < T leaves at least a_T"))
    }
}

pub fn phi2(c: &ParamRule, ctx: &Phi2Context, extent: &Extent) -> Result<Schedule, ScrambledError> {
    let mut schedule = Schedule::new();
    let cap = ctx.cap.as_ref();
    let t = ctx.period_len();
    let plain = |stage, kind, word: Word| ScheduleEntry {
        stage,
        index: 0,
        kind,
        word,
        exponent: BigUint::from(1u32),
        start: BigUint::ZERO,
        capped: false,
        param: None,
        u_index: None,
    };

    schedule.push(plain(0, BlockKind::Head, Word::single(ctx.a0)));
    schedule.push(plain(0, BlockKind::C, ctx.connector.clone()));

    let mut index = 0usize;
    let mut scheduled = 0usize;
    let mut c_index = 0usize;
    for stage in 1.. {
        if stage >= 2 {
            index += 1;
            scheduled += 1;
            let (p, capped) = scheduled_exponent(index, schedule.total_len(), cap);
            let full = &p / t;
            let partial = (&p % t).to_usize().expect("reduced modulo the period");
            if full > BigUint::ZERO {
                schedule.push(ScheduleEntry {
                    index,
                    exponent: full,
                    capped,
                    ..plain(stage, BlockKind::B, ctx.period.clone())
                });
            }
            if partial > 0 {
                let word = Word::new(ctx.period.symbols()[..partial].to_vec())?;
                schedule.push(ScheduleEntry {
                    index,
                    capped,
                    ..plain(stage, BlockKind::B, word)
                });
            }
            if let Some(bar) = ctx.b_bar(&p) {
                schedule.push(plain(stage, BlockKind::BBar, bar));
            }
            schedule.push(plain(stage, BlockKind::C, ctx.connector.clone()));
            if reached(extent, schedule.total_len(), scheduled) {
                return Ok(schedule);
            }
        }
        for _ in 0..stage {
            let sym = c
                .get(c_index)
                .ok_or(ScrambledError::InsufficientParameter { index: c_index })?;
            c_index += 1;
            index += 1;
            scheduled += 1;
            let (exponent, capped) = scheduled_exponent(index, schedule.total_len(), cap);
            schedule.push(ScheduleEntry {
                index,
                exponent,
                capped,
                param: Some(sym),
                ..plain(stage, BlockKind::Psi, ctx.gadget.select(sym).clone())
            });
            if reached(extent, schedule.total_len(), scheduled) {
                return Ok(schedule);
            }
        }
    }
    unreachable!("stage loop only exits by returning")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::pow2;
    use crate::scrambled::params::scrambled_params;
    use crate::symbolic::is_admissible;

    fn ctx(alpha: &str, cap: Option<BigUint>) -> Phi2Context {
        let a = TransitionMatrix::parse_inline("01;11").unwrap();
        Phi2Context::new(&a, &alpha.parse().unwrap(), None, cap).unwrap()
    }

    #[test]
    fn context_for_bundled_matrix() {
        let c = ctx("(12)", None);
        assert_eq!(c.period.to_string(), "12");
        assert_eq!(c.connector.to_string(), "2");
        assert_eq!(
            (c.u().to_string(), c.v().to_string()),
            ("1212".into(), "1222".into())
        );
    }

    #[test]
    fn b_bar_convention() {
        let c = ctx("(12)", None);
        // p even: a_{p-1} = a_1 = 2, q = 1, so B̄ = (a_2) = (a_0).
        assert_eq!(c.b_bar(&BigUint::from(72u32)).unwrap().to_string(), "1");
        assert_eq!(c.b_bar(&BigUint::from(3u32)), None);
        let c3 = ctx("(122)", None);
        assert_eq!(c3.b_bar(&BigUint::from(2u32)).unwrap().to_string(), "21");
        assert_eq!(c3.b_bar(&BigUint::from(3u32)).unwrap().to_string(), "1");
        assert_eq!(c3.b_bar(&BigUint::from(4u32)), None);
    }

    // Oracle: hand recurrence m_1 = 2·|a_0 C|, p_2 = 4·(|a_0 C| + m_1 |u|), ...
    #[test]
    fn schedule_values() {
        let c = ctx("(12)", None);
        let s = phi2(&ParamRule::Constant(1), &c, &Extent::Blocks(3)).unwrap();
        let e = s.entries();
        use BlockKind::*;
        let kinds: Vec<BlockKind> = e.iter().map(|x| x.kind).collect();
        assert_eq!(kinds, vec![Head, C, Psi, B, BBar, C, Psi]);
        assert_eq!(e[2].exponent, BigUint::from(4u32));
        assert_eq!(e[3].exponent, BigUint::from(36u32));
        assert_eq!(e[3].index, 2);
        assert_eq!(e[6].exponent, BigUint::from(736u32));
        assert_eq!(e[6].index, 3);
        let mut left = 0u64;
        for x in e {
            assert_eq!(x.start, BigUint::from(left));
            left += x.exponent.to_u64().unwrap() * x.word.len() as u64;
        }
        assert_eq!(s.total_len(), &BigUint::from(left));
    }

    #[test]
    fn b_indices_and_stage_layout() {
        let c = ctx("(12)", Some(pow2(12)));
        let s = phi2(&ParamRule::Constant(2), &c, &Extent::Blocks(14)).unwrap();
        let b_idx: Vec<usize> = s
            .entries()
            .iter()
            .filter(|e| e.kind == BlockKind::B)
            .map(|e| e.index)
            .collect();
        assert_eq!(b_idx, vec![2, 5, 9, 14]);
    }

    #[test]
    fn period_is_required_and_checked() {
        let a = TransitionMatrix::parse_inline("01;11").unwrap();
        let err = Phi2Context::new(&a, &"1(2)".parse().unwrap(), None, None).unwrap_err();
        assert_eq!(err, ScrambledError::PeriodRequired);
        let err = Phi2Context::new(&a, &"1212".parse().unwrap(), None, None).unwrap_err();
        assert_eq!(err, ScrambledError::PeriodRequired);
        let err = Phi2Context::new(&a, &"(1212)".parse().unwrap(), Some(4), None).unwrap_err();
        assert_eq!(
            err,
            ScrambledError::PeriodMismatch {
                declared: 4,
                actual: 2
            }
        );
    }

    #[test]
    fn materialized_prefixes_are_admissible() {
        let a3 = TransitionMatrix::parse_inline("011;101;111").unwrap();
        let cases = [
            (TransitionMatrix::parse_inline("01;11").unwrap(), "(12)"),
            (TransitionMatrix::parse_inline("01;11").unwrap(), "(122)"),
            (a3.clone(), "(123)"),
            (a3, "(312)"),
        ];
        for (a, alpha) in cases {
            let ctx = Phi2Context::new(&a, &alpha.parse().unwrap(), None, Some(pow2(9))).unwrap();
            for c in scrambled_params(3, 5) {
                let s = phi2(&c, &ctx, &Extent::Length(BigUint::from(100_000u32))).unwrap();
                let prefix = s
                    .sequence()
                    .materialize(&BigUint::from(100_000u32), 1 << 20)
                    .unwrap();
                assert!(is_admissible(&prefix.symbols, &a).unwrap(), "{alpha}");
                // Each B block starts where α has a_0.
                for e in s.entries().iter().filter(|e| e.kind == BlockKind::B) {
                    assert_eq!(e.word.first(), ctx.a0);
                }
            }
        }
    }
}
