//! Finite words, sequence prefixes, the symbolic metric and run-length
//! encoded block sequences.
//!
//! Symbols are 1-based (`1..=m`). Positions are 0-based throughout, which
//! matches the convention that the first coordinate of a sequence is number 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{inv_pow2, serde_biguint, Rational};
use crate::transition::TransitionMatrix;

pub type Symbol = u8;

/// Default cap on the number of symbols [`BlockSequence::materialize`] will produce.
pub const DEFAULT_MATERIALIZE_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("words must contain at least one symbol")]
    EmptyWord,
    #[error("symbol {symbol} at position {position} is outside 1..={m}")]
    SymbolOutOfRange {
        symbol: Symbol,
        position: usize,
        m: usize,
    },
    #[error("cannot shift by {k}: prefix has only {len} symbols")]
    ShiftPastEnd { k: usize, len: usize },
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("index {index} is past the end of a sequence of length {len}")]
    IndexPastEnd { index: BigUint, len: BigUint },
    #[error("materializing {requested} symbols exceeds the cap of {cap}")]
    CapExceeded { requested: BigUint, cap: usize },
    #[error("cannot parse word '{0}'")]
    Parse(String),
}

/// A nonempty finite word over the alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, SymbolicError> {
        if symbols.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        if let Some(position) = symbols.iter().position(|&s| s == 0) {
            return Err(SymbolicError::SymbolOutOfRange {
                symbol: 0,
                position,
                m: Symbol::MAX as usize,
            });
        }
        Ok(Word(symbols))
    }

    pub fn single(symbol: Symbol) -> Self {
        Word(vec![symbol])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Symbol {
        self.0[0]
    }

    pub fn last(&self) -> Symbol {
        self.0[self.0.len() - 1]
    }

    /// Symbol of the infinite periodic repetition `self self self ...` at `index`.
    pub fn cyclic(&self, index: usize) -> Symbol {
        self.0[index % self.0.len()]
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }
}

impl fmt::Display for Word {
    /// Digits when every symbol is below 10, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbols(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Word {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::new(parse_symbols(s)?)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn format_symbols(symbols: &[Symbol]) -> String {
    if symbols.iter().all(|&s| s < 10) {
        symbols.iter().map(|s| char::from(b'0' + s)).collect()
    } else {
        symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses `"1212"` or `"1,12,3"`.
pub fn parse_symbols(s: &str) -> Result<Vec<Symbol>, SymbolicError> {
    let s = s.trim();
    let bad = || SymbolicError::Parse(s.to_string());
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<Symbol>().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as Symbol).ok_or_else(bad))
            .collect()
    }
}

/// A finite truncation of an infinite sequence, optionally tagged with the
/// sequence it was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    pub symbols: Vec<Symbol>,
    pub origin: Option<String>,
}

impl SequencePrefix {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        SequencePrefix {
            symbols,
            origin: None,
        }
    }

    pub fn with_origin(symbols: Vec<Symbol>, origin: impl Into<String>) -> Self {
        SequencePrefix {
            symbols,
            origin: Some(origin.into()),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Value of the metric on truncated sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rho {
    /// The distance is known exactly.
    Exact(Rational),
    /// The prefixes agree on their common part; the distance is at most this.
    AtMost(Rational),
}

impl Rho {
    /// The certified value or the certified upper bound.
    pub fn bound(&self) -> &Rational {
        match self {
            Rho::Exact(q) | Rho::AtMost(q) => q,
        }
    }
}

/// `2^{-(k+1)}` at the first disagreement `k`.
pub fn rho(alpha: &SequencePrefix, beta: &SequencePrefix) -> Rho {
    let common = alpha.len().min(beta.len());
    if let Some(k) = (0..common).find(|&i| alpha.symbols[i] != beta.symbols[i]) {
        return Rho::Exact(inv_pow2(k as u64 + 1));
    }
    match (&alpha.origin, &beta.origin) {
        (Some(a), Some(b)) if a == b => Rho::Exact(Rational::zero()),
        _ => Rho::AtMost(inv_pow2(common as u64 + 1)),
    }
}

/// Drops the first `k` symbols.
pub fn shift(alpha: &SequencePrefix, k: usize) -> Result<SequencePrefix, SymbolicError> {
    if k >= alpha.len() {
        return Err(SymbolicError::ShiftPastEnd {
            k,
            len: alpha.len(),
        });
    }
    Ok(SequencePrefix {
        symbols: alpha.symbols[k..].to_vec(),
        origin: alpha.origin.as_ref().map(|o| format!("shift^{k}({o})")),
    })
}

/// True iff every adjacent transition is allowed by `a`.
pub fn is_admissible(symbols: &[Symbol], a: &TransitionMatrix) -> Result<bool, SymbolicError> {
    let m = a.size();
    if let Some(position) = symbols.iter().position(|&s| s == 0 || s as usize > m) {
        return Err(SymbolicError::SymbolOutOfRange {
            symbol: symbols[position],
            position,
            m,
        });
    }
    Ok(symbols.windows(2).all(|w| a.allows(w[0], w[1])))
}

pub fn concat(u: &Word, v: &Word) -> Word {
    let mut symbols = u.0.clone();
    symbols.extend_from_slice(&v.0);
    Word(symbols)
}

/// `u^n` as a single run-length block.
pub fn power(u: &Word, n: BigUint) -> Result<Block, SymbolicError> {
    Block::new(u.clone(), n)
}

/// One run-length block `word^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub word: Word,
    #[serde(with = "serde_biguint")]
    pub exponent: BigUint,
}

impl Block {
    pub fn new(word: Word, exponent: BigUint) -> Result<Self, SymbolicError> {
        if exponent.is_zero() {
            return Err(SymbolicError::ZeroPower);
        }
        Ok(Block { word, exponent })
    }

    pub fn once(word: Word) -> Self {
        Block {
            word,
            exponent: BigUint::one(),
        }
    }

    pub fn len(&self) -> BigUint {
        &self.exponent * self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A run-length encoded symbol sequence. Lengths and indices are exact big
/// integers, so sequences far longer than memory can be indexed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockSequence {
    blocks: Vec<Block>,
    // starts[i] = total length of blocks[..i]
    starts: Vec<BigUint>,
    total: BigUint,
}

impl BlockSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = Block>) -> Self {
        let mut seq = Self::new();
        for b in blocks {
            seq.push(b);
        }
        seq
    }

    pub fn push(&mut self, block: Block) {
        self.starts.push(self.total.clone());
        self.total += block.len();
        self.blocks.push(block);
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_start(&self, i: usize) -> &BigUint {
        &self.starts[i]
    }

    pub fn total_len(&self) -> &BigUint {
        &self.total
    }

    /// Index of the block containing `index`; walks the block list.
    pub fn locate(&self, index: &BigUint) -> Result<(usize, BigUint), SymbolicError> {
        if *index >= self.total {
            return Err(SymbolicError::IndexPastEnd {
                index: index.clone(),
                len: self.total.clone(),
            });
        }
        // starts is sorted, so binary search finds the owning block.
        let i = match self.starts.binary_search(index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        Ok((i, index - &self.starts[i]))
    }

    pub fn symbol_at(&self, index: &BigUint) -> Result<Symbol, SymbolicError> {
        let (i, offset) = self.locate(index)?;
        let word = &self.blocks[i].word;
        let within = (offset % word.len())
            .to_usize()
            .expect("offset reduced modulo a word length");
        Ok(word.symbols()[within])
    }

    /// Up to `len` symbols starting at `index`, stopping early at the end.
    pub fn window(&self, index: &BigUint, len: usize) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(len);
        let Ok((first, mut offset)) = self.locate(index) else {
            return out;
        };
        for block in &self.blocks[first..] {
            let wlen = block.word.len();
            let mut within = (&offset % wlen)
                .to_usize()
                .expect("reduced modulo word length");
            let available = block.len() - &offset;
            let want = len - out.len();
            let take = available.to_usize().map_or(want, |a| a.min(want));
            for _ in 0..take {
                out.push(block.word.symbols()[within]);
                within = (within + 1) % wlen;
            }
            if out.len() == len {
                break;
            }
            offset = BigUint::zero();
        }
        out
    }

    /// The first `n` symbols, refusing to exceed `cap`.
    pub fn materialize(&self, n: &BigUint, cap: usize) -> Result<SequencePrefix, SymbolicError> {
        if *n > self.total {
            return Err(SymbolicError::IndexPastEnd {
                index: n.clone(),
                len: self.total.clone(),
            });
        }
        let wanted = match n.to_usize() {
            Some(w) if w <= cap => w,
            _ => {
                return Err(SymbolicError::CapExceeded {
                    requested: n.clone(),
                    cap,
                });
            }
        };
        let mut symbols = Vec::with_capacity(wanted);
        'outer: for block in &self.blocks {
            let reps = block.exponent.to_usize().unwrap_or(usize::MAX);
            for _ in 0..reps {
                for &s in block.word.symbols() {
                    if symbols.len() == wanted {
                        break 'outer;
                    }
                    symbols.push(s);
                }
            }
            if symbols.len() == wanted {
                break;
            }
        }
        Ok(SequencePrefix::new(symbols))
    }
}
