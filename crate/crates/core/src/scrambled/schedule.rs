//! Block schedules shared by both constructions.

use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{pow2, serde_biguint};
use crate::symbolic::{Block, BlockSequence, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// The single leading `a_0`.
    Head,
    /// `v_{c_i}` power.
    V,
    /// `u_k` power.
    U,
    /// `ψ(c_i)` power.
    Psi,
    /// Part of `B_p = (a_0 ... a_{p-1})`.
    B,
    /// `B̄_p`, completing `B_p` to a period boundary.
    BBar,
    /// The connector word.
    C,
}

impl BlockKind {
    /// Blocks whose word depends on the parameter.
    pub fn is_parametric(self) -> bool {
        matches!(self, BlockKind::V | BlockKind::Psi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleEntry {
    pub stage: usize,
    /// Global index `i` of the exponent `s_i`, `m_i` or `p_i`; 0 for blocks
    /// without a scheduled exponent.
    pub index: usize,
    pub kind: BlockKind,
    pub word: Word,
    #[serde(with = "serde_biguint")]
    pub exponent: BigUint,
    #[serde(with = "serde_biguint")]
    pub start: BigUint,
    /// The exponent was clamped by the cap.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub capped: bool,
    /// Parameter symbol selecting the word (`V` and `Psi` blocks).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<Symbol>,
    /// `k` of `u_k` for `U` blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_index: Option<usize>,
}

impl ScheduleEntry {
    pub fn len(&self) -> BigUint {
        &self.exponent * self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> BigUint {
        &self.start + self.len()
    }
}

/// Where to stop generating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extent {
    /// Stop once the total length reaches this many symbols.
    Length(BigUint),
    /// Stop after this many exponent-scheduled blocks.
    Blocks(usize),
}

/// Shape of an entry with parameter-dependent data erased.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkeletonEntry {
    pub stage: usize,
    pub index: usize,
    pub kind: BlockKind,
    pub word_len: usize,
    pub fixed_word: Option<Word>,
    pub exponent: BigUint,
    pub start: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
    sequence: BlockSequence,
}

impl Schedule {
    pub(crate) fn new() -> Self {
        Schedule {
            entries: Vec::new(),
            sequence: BlockSequence::new(),
        }
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    pub fn sequence(&self) -> &BlockSequence {
        &self.sequence
    }

    pub fn total_len(&self) -> &BigUint {
        self.sequence.total_len()
    }

    pub fn any_capped(&self) -> bool {
        self.entries.iter().any(|e| e.capped)
    }

    pub(crate) fn push(&mut self, mut entry: ScheduleEntry) {
        entry.start = self.sequence.total_len().clone();
        self.sequence.push(
            Block::new(entry.word.clone(), entry.exponent.clone())
                .expect("scheduled exponents are positive"),
        );
        self.entries.push(entry);
    }

    pub fn skeleton(&self) -> Vec<SkeletonEntry> {
        self.entries
            .iter()
            .map(|e| SkeletonEntry {
                stage: e.stage,
                index: e.index,
                kind: e.kind,
                word_len: e.word.len(),
                fixed_word: (!e.kind.is_parametric()).then(|| e.word.clone()),
                exponent: e.exponent.clone(),
                start: e.start.clone(),
            })
            .collect()
    }

    /// One JSON object per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for e in &self.entries {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Starts of every repetition of every `U` and `V` block, in increasing
    /// order. Lazy, since exponents may be astronomically large.
    pub fn p_sequence(&self) -> PSequence<'_> {
        PSequence {
            entries: &self.entries,
            block: 0,
            next: None,
        }
    }
}

pub struct PSequence<'a> {
    entries: &'a [ScheduleEntry],
    block: usize,
    // (next position, end of current block, step)
    next: Option<(BigUint, BigUint, usize)>,
}

impl Iterator for PSequence<'_> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        loop {
            if let Some((pos, end, step)) = &mut self.next {
                if *pos < *end {
                    let out = pos.clone();
                    *pos += *step;
                    return Some(out);
                }
                self.next = None;
            }
            let e = self.entries.get(self.block)?;
            self.block += 1;
            if matches!(e.kind, BlockKind::U | BlockKind::V) {
                self.next = Some((e.start.clone(), e.end(), e.word.len()));
            }
        }
    }
}

/// `2^i · left`, clamped to `cap`; the flag says whether clamping happened.
pub(crate) fn scheduled_exponent(
    i: usize,
    left: &BigUint,
    cap: Option<&BigUint>,
) -> (BigUint, bool) {
    let raw = if left.is_zero() {
        BigUint::one()
    } else {
        pow2(i as u64) * left
    };
    match cap {
        Some(c) if &raw > c => (c.clone(), true),
        _ => (raw, false),
    }
}

pub(crate) fn reached(extent: &Extent, total: &BigUint, scheduled: usize) -> bool {
    match extent {
        Extent::Length(n) => total >= n,
        Extent::Blocks(n) => scheduled >= *n,
    }
}
