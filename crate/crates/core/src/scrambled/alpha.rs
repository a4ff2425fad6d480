//! Generator rules for the base sequence `α = (a_0 a_1 ...)`.

use std::fmt;
use std::str::FromStr;

use super::ScrambledError;
use crate::symbolic::{format_symbols, parse_symbols, Symbol};
use crate::transition::TransitionMatrix;

/// How far finite scans (recurrence, symbol frequency, admissibility) look.
pub const DEFAULT_SCAN_BUDGET: usize = 4096;

/// An infinite sequence given by a finite rule, or a finite prefix.
///
/// Text syntax: `(12)` is `1212...`, `1(12)` is `1 1212...`, and a bare word
/// such as `1212` is a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlphaRule {
    Periodic(Vec<Symbol>),
    EventuallyPeriodic {
        head: Vec<Symbol>,
        cycle: Vec<Symbol>,
    },
    Finite(Vec<Symbol>),
}

impl AlphaRule {
    /// `a_i`, or `None` past the end of a finite prefix.
    pub fn symbol_at(&self, i: usize) -> Option<Symbol> {
        match self {
            AlphaRule::Periodic(cycle) => Some(cycle[i % cycle.len()]),
            AlphaRule::EventuallyPeriodic { head, cycle } => Some(if i < head.len() {
                head[i]
            } else {
                cycle[(i - head.len()) % cycle.len()]
            }),
            AlphaRule::Finite(prefix) => prefix.get(i).copied(),
        }
    }

    /// Number of known symbols: `None` for infinite rules.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            AlphaRule::Finite(p) => Some(p.len()),
            _ => None,
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Vec<Symbol>, ScrambledError> {
        (0..n)
            .map(|i| {
                self.symbol_at(i).ok_or(ScrambledError::AlphaTooShort {
                    needed: n,
                    available: i,
                })
            })
            .collect()
    }

    /// Minimal period when the rule is purely periodic.
    pub fn minimal_period(&self) -> Option<usize> {
        match self {
            AlphaRule::Periodic(cycle) => Some(minimal_period(cycle)),
            _ => None,
        }
    }

    /// `σ^k(α)`.
    pub fn shifted(&self, k: usize) -> AlphaRule {
        match self {
            AlphaRule::Periodic(cycle) => {
                let r = k % cycle.len();
                AlphaRule::Periodic([&cycle[r..], &cycle[..r]].concat())
            }
            AlphaRule::EventuallyPeriodic { head, cycle } => {
                if k < head.len() {
                    AlphaRule::EventuallyPeriodic {
                        head: head[k..].to_vec(),
                        cycle: cycle.clone(),
                    }
                } else {
                    AlphaRule::Periodic(cycle.clone()).shifted(k - head.len())
                }
            }
            AlphaRule::Finite(prefix) => AlphaRule::Finite(prefix[k.min(prefix.len())..].to_vec()),
        }
    }

    /// Symbols that occur infinitely often, when that is decidable.
    fn recurrent(&self, s: Symbol) -> Option<bool> {
        match self {
            AlphaRule::Periodic(cycle) | AlphaRule::EventuallyPeriodic { cycle, .. } => {
                Some(cycle.contains(&s))
            }
            AlphaRule::Finite(_) => None,
        }
    }

    /// Most frequent symbol among the first `budget` symbols (ties go to the
    /// smaller symbol), and the index of its first occurrence.
    pub fn most_frequent(&self, budget: usize) -> Option<(Symbol, usize)> {
        let n = self.known_len().map_or(budget, |l| l.min(budget));
        let mut counts = [0usize; 256];
        for i in 0..n {
            counts[self.symbol_at(i)? as usize] += 1;
        }
        let (best, _) = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .max_by(|(a, ca), (b, cb)| ca.cmp(cb).then(b.cmp(a)))?;
        let first = (0..n).find(|&i| self.symbol_at(i) == Some(best as Symbol))?;
        Some((best as Symbol, first))
    }

    /// Rotates `α` so that its most frequent symbol leads. Returns the new
    /// rule and the shift applied.
    pub fn normalized(&self, budget: usize) -> Result<(AlphaRule, usize), ScrambledError> {
        let (_, first) = self
            .most_frequent(budget)
            .ok_or(ScrambledError::EmptyAlpha)?;
        Ok((self.shifted(first), first))
    }

    /// Checks that every transition of `α` is allowed by `a`: all of a
    /// periodic rule, or the first `budget` symbols of a finite one.
    pub fn check_admissible(
        &self,
        a: &TransitionMatrix,
        budget: usize,
    ) -> Result<(), ScrambledError> {
        let span = match self {
            AlphaRule::Periodic(cycle) => cycle.len() + 1,
            AlphaRule::EventuallyPeriodic { head, cycle } => head.len() + cycle.len() + 1,
            AlphaRule::Finite(p) => p.len().min(budget),
        };
        let symbols = self.prefix(span)?;
        for (i, &s) in symbols.iter().enumerate() {
            if s == 0 || s as usize > a.size() {
                return Err(ScrambledError::NonAdmissibleAlpha { position: i });
            }
        }
        match symbols.windows(2).position(|w| !a.allows(w[0], w[1])) {
            Some(i) => Err(ScrambledError::NonAdmissibleAlpha { position: i }),
            None => Ok(()),
        }
    }
}

/// `(ν_1, ..., ν_k)`: the first `k` indices `ν >= 1` with `a_ν = a0`.
pub fn recurrence_indices(
    alpha: &AlphaRule,
    a0: Symbol,
    k: usize,
    budget: usize,
) -> Result<Vec<usize>, ScrambledError> {
    if alpha.recurrent(a0) == Some(false) {
        return Err(ScrambledError::NotRecurrent { symbol: a0, budget });
    }
    let mut out = Vec::with_capacity(k);
    let mut i = 1;
    while out.len() < k {
        match alpha.symbol_at(i) {
            Some(s) if s == a0 => out.push(i),
            Some(_) => {}
            None => return Err(ScrambledError::NotRecurrent { symbol: a0, budget }),
        }
        i += 1;
        // Infinite rules that contain a0 in their cycle always terminate.
        if alpha.recurrent(a0).is_none() && i > budget {
            return Err(ScrambledError::NotRecurrent { symbol: a0, budget });
        }
    }
    Ok(out)
}

pub fn minimal_period(cycle: &[Symbol]) -> usize {
    let n = cycle.len();
    (1..=n)
        .find(|&t| n.is_multiple_of(t) && (t..n).all(|i| cycle[i] == cycle[i - t]))
        .unwrap_or(n)
}

impl fmt::Display for AlphaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaRule::Periodic(cycle) => write!(f, "({})", format_symbols(cycle)),
            AlphaRule::EventuallyPeriodic { head, cycle } => {
                write!(f, "{}({})", format_symbols(head), format_symbols(cycle))
            }
            AlphaRule::Finite(prefix) => f.write_str(&format_symbols(prefix)),
        }
    }
}

impl FromStr for AlphaRule {
    type Err = ScrambledError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScrambledError::InvalidAlpha(s.to_string());
        let word = |t: &str| -> Result<Vec<Symbol>, ScrambledError> {
            let w = parse_symbols(t).map_err(|_| bad())?;
            if w.is_empty() || w.contains(&0) {
                return Err(bad());
            }
            Ok(w)
        };
        match s.find('(') {
            None => Ok(AlphaRule::Finite(word(s)?)),
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                let cycle = word(inner)?;
                let head = &s[..open];
                if head.is_empty() {
                    Ok(AlphaRule::Periodic(cycle))
                } else {
                    Ok(AlphaRule::EventuallyPeriodic {
                        head: word(head)?,
                        cycle,
                    })
                }
            }
        }
    }
}
