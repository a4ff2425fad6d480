//! Parameters `c ∈ Σ_2` and families of them that pairwise disagree at
//! infinitely many coordinates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symbolic::Symbol;

/// Number of `ω` coordinates precomputed for seeded parameters. Stage `g` of a
/// construction reads `ω_1 .. ω_g`, so this bounds the number of stages.
pub const OMEGA_LEN: usize = 1024;

/// A binary sequence over `{1, 2}` given by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamRule {
    Constant(Symbol),
    /// An explicit finite prefix.
    Prefix(Vec<Symbol>),
    /// The flattening of `(ω_1, ω_1 ω_2, ω_1 ω_2 ω_3, ...)`: chunk `g` holds
    /// `ω_1 .. ω_g` and occupies indices `g(g-1)/2 .. g(g+1)/2`.
    Diagonal(Vec<Symbol>),
}

impl ParamRule {
    /// `c_i`, or `None` when the rule does not reach that far.
    pub fn get(&self, i: usize) -> Option<Symbol> {
        match self {
            ParamRule::Constant(s) => Some(*s),
            ParamRule::Prefix(p) => p.get(i).copied(),
            ParamRule::Diagonal(omega) => {
                let (_, offset) = chunk_of(i);
                omega.get(offset).copied()
            }
        }
    }

    pub fn prefix(&self, n: usize) -> Option<Vec<Symbol>> {
        (0..n).map(|i| self.get(i)).collect()
    }
}

/// `(g, offset)` for flattened index `i`, with chunks numbered from 1.
pub fn chunk_of(i: usize) -> (usize, usize) {
    let mut g = 1;
    let mut start = 0;
    while start + g <= i {
        start += g;
        g += 1;
    }
    (g, i - start)
}

impl fmt::Display for ParamRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |v: &[Symbol]| v.iter().map(|s| s.to_string()).collect::<String>();
        match self {
            ParamRule::Constant(s) => write!(f, "({s})"),
            ParamRule::Prefix(p) => f.write_str(&digits(p)),
            ParamRule::Diagonal(omega) => {
                let shown = &omega[..omega.len().min(16)];
                write!(
                    f,
                    "diag[{}{}]",
                    digits(shown),
                    if omega.len() > 16 { "..." } else { "" }
                )
            }
        }
    }
}

/// `count` parameters that differ pairwise at infinitely many coordinates.
///
/// Parameter `j` gets `ω` whose first `b` coordinates spell `j` in binary
/// (bit 0 first, `1` for a clear bit, `2` for a set bit), where `b` is the
/// number of bits needed for `count`; the rest is drawn from a ChaCha stream
/// keyed by `seed` and `j`. Two parameters differ somewhere in `ω_1 .. ω_b`,
/// hence once in every chunk `g >= b`.
pub fn scrambled_params(count: usize, seed: u64) -> Vec<ParamRule> {
    let bits = (usize::BITS - count.saturating_sub(1).leading_zeros()).max(1) as usize;
    (0..count)
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            let omega = (0..OMEGA_LEN)
                .map(|k| {
                    if k < bits {
                        if (j >> k) & 1 == 1 {
                            2
                        } else {
                            1
                        }
                    } else {
                        rng.gen_range(1..=2)
                    }
                })
                .collect();
            ParamRule::Diagonal(omega)
        })
        .collect()
}

/// Indices `i < n` with `c_i != d_i`.
pub fn disagreement_positions(c: &[Symbol], d: &[Symbol], n: usize) -> Vec<usize> {
    (0..n.min(c.len()).min(d.len()))
        .filter(|&i| c[i] != d[i])
        .collect()
}
