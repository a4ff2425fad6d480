//! Transition matrices: validity, irreducibility, the branching-row
//! condition, admissible-word enumeration and the word gadgets the
//! scrambled-set constructions need.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::symbolic::{Symbol, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransitionError {
    #[error("matrix must be at least 2x2, got size {0}")]
    TooSmall(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) is {value}, expected 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: i64 },
    #[error("row {0} has no nonzero entry")]
    ZeroRow(usize),
    #[error("column {0} has no nonzero entry")]
    ZeroColumn(usize),
    #[error("word length must be at least 1")]
    LengthZero,
    #[error("symbol {0} is outside the alphabet")]
    SymbolOutOfRange(Symbol),
    #[error("no {what} found for symbol {a0}")]
    NotFound { what: &'static str, a0: Symbol },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// A validated 0/1 transition matrix over the alphabet `1..=m`.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<Vec<u8>>")]
pub struct TransitionMatrix {
    rows: Vec<Vec<bool>>,
}

impl From<TransitionMatrix> for Vec<Vec<u8>> {
    fn from(a: TransitionMatrix) -> Self {
        a.to_rows()
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransitionMatrix({})", self.to_row_string())
    }
}

/// Checks the entries and builds a [`TransitionMatrix`].
///
/// Rules: square, size at least 2, entries in {0, 1}, no zero row and no
/// zero column. Row/column numbers in errors are 1-based symbols.
pub fn validate_matrix(entries: &[Vec<i64>]) -> Result<TransitionMatrix, TransitionError> {
    let m = entries.len();
    for (i, row) in entries.iter().enumerate() {
        if row.len() != m {
            return Err(TransitionError::NotSquare {
                row: i + 1,
                len: row.len(),
                expected: m,
            });
        }
    }
    if m < 2 {
        return Err(TransitionError::TooSmall(m));
    }
    for (i, row) in entries.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            if value != 0 && value != 1 {
                return Err(TransitionError::NonBinaryEntry {
                    row: i + 1,
                    col: j + 1,
                    value,
                });
            }
        }
    }
    if let Some(i) = (0..m).find(|&i| entries[i].iter().all(|&v| v == 0)) {
        return Err(TransitionError::ZeroRow(i + 1));
    }
    if let Some(j) = (0..m).find(|&j| entries.iter().all(|row| row[j] == 0)) {
        return Err(TransitionError::ZeroColumn(j + 1));
    }
    Ok(TransitionMatrix {
        rows: entries
            .iter()
            .map(|row| row.iter().map(|&v| v == 1).collect())
            .collect(),
    })
}

impl TransitionMatrix {
    pub fn from_rows(entries: &[Vec<i64>]) -> Result<Self, TransitionError> {
        validate_matrix(entries)
    }

    /// Parses the inline form `"01;11"`; rows separated by `;`, entries may
    /// also be separated by commas or spaces.
    pub fn parse_inline(text: &str) -> Result<Self, TransitionError> {
        let rows = text
            .split(';')
            .map(|row| {
                let row = row.trim();
                let tokens: Vec<&str> = if row.contains(',') || row.contains(' ') {
                    row.split([',', ' ']).filter(|t| !t.is_empty()).collect()
                } else {
                    row.split("").filter(|t| !t.is_empty()).collect()
                };
                tokens
                    .iter()
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| TransitionError::Parse(text.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        validate_matrix(&rows)
    }

    pub fn all_ones(m: usize) -> Self {
        TransitionMatrix {
            rows: vec![vec![true; m]; m],
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Whether the transition `from -> to` is allowed (1-based symbols).
    pub fn allows(&self, from: Symbol, to: Symbol) -> bool {
        self.rows[from as usize - 1][to as usize - 1]
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        1..=self.size() as Symbol
    }

    pub fn successors(&self, from: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols().filter(move |&j| self.allows(from, j))
    }

    pub fn row_sum(&self, i: Symbol) -> usize {
        self.rows[i as usize - 1].iter().filter(|&&b| b).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&b| b as u8).collect())
            .collect()
    }

    pub fn to_row_string(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    fn check_symbol(&self, s: Symbol) -> Result<(), TransitionError> {
        if s == 0 || s as usize > self.size() {
            Err(TransitionError::SymbolOutOfRange(s))
        } else {
            Ok(())
        }
    }

    /// Strong connectivity of the graph `i -> j iff a_ij = 1`: every ordered
    /// pair (including `i = i`) is joined by a path of length at least one.
    pub fn is_irreducible(&self) -> bool {
        let m = self.size();
        (0..m).all(|start| {
            let mut seen = vec![false; m];
            let mut stack: Vec<usize> = (0..m).filter(|&j| self.rows[start][j]).collect();
            for &j in &stack {
                seen[j] = true;
            }
            while let Some(i) = stack.pop() {
                for (j, s) in seen.iter_mut().enumerate() {
                    if self.rows[i][j] && !*s {
                        *s = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        })
    }

    /// Smallest row whose sum is at least 2.
    pub fn star_row(&self) -> Option<Symbol> {
        self.symbols().find(|&i| self.row_sum(i) >= 2)
    }

    /// All admissible words of length `n` in lexicographic order.
    pub fn enumerate_admissible_words(&self, n: usize) -> Result<Vec<Word>, TransitionError> {
        if n == 0 {
            return Err(TransitionError::LengthZero);
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        for s in self.symbols() {
            current.push(s);
            self.extend_words(&mut current, n, &mut out);
            current.pop();
        }
        Ok(out)
    }

    fn extend_words(&self, current: &mut Vec<Symbol>, n: usize, out: &mut Vec<Word>) {
        if current.len() == n {
            out.push(Word::new(current.clone()).expect("nonempty"));
            return;
        }
        let last = *current.last().expect("nonempty");
        for next in self.successors(last).collect::<Vec<_>>() {
            current.push(next);
            self.extend_words(current, n, out);
            current.pop();
        }
    }

    /// Number of admissible words of length `n`, by transfer-matrix iteration.
    pub fn count_admissible_words(&self, n: usize) -> Result<BigUint, TransitionError> {
        if n == 0 {
            return Err(TransitionError::LengthZero);
        }
        let mut counts = vec![BigUint::one(); self.size()];
        for _ in 1..n {
            counts = self.step_counts(&counts);
        }
        Ok(counts.into_iter().sum())
    }

    // counts'[j] = sum_i counts[i] * a_ij
    fn step_counts(&self, counts: &[BigUint]) -> Vec<BigUint> {
        let m = self.size();
        (0..m)
            .map(|j| {
                (0..m)
                    .filter(|&i| self.rows[i][j])
                    .map(|i| counts[i].clone())
                    .sum()
            })
            .collect()
    }

    /// `table[k][x]`: some word of exactly `k` further transitions leads from
    /// `x` into the `accept` set.
    fn exact_reach(&self, accept: &[bool], max_steps: usize) -> Vec<Vec<bool>> {
        let m = self.size();
        let mut table = vec![accept.to_vec()];
        for k in 1..=max_steps {
            let prev = &table[k - 1];
            let next = (0..m)
                .map(|x| (0..m).any(|y| self.rows[x][y] && prev[y]))
                .collect();
            table.push(next);
        }
        table
    }

    /// The lexicographically first `want` admissible words of length `len`
    /// whose first symbol is in `starts` and last symbol is in `accept`.
    fn lex_first_words(
        &self,
        starts: &[Symbol],
        len: usize,
        accept: &[bool],
        want: usize,
    ) -> Vec<Word> {
        let reach = self.exact_reach(accept, len.saturating_sub(1));
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        for &s in starts {
            if reach[len - 1][s as usize - 1] {
                current.push(s);
                self.lex_dfs(&mut current, len, &reach, want, &mut out);
                current.pop();
            }
            if out.len() >= want {
                break;
            }
        }
        out
    }

    fn lex_dfs(
        &self,
        current: &mut Vec<Symbol>,
        len: usize,
        reach: &[Vec<bool>],
        want: usize,
        out: &mut Vec<Word>,
    ) {
        if out.len() >= want {
            return;
        }
        if current.len() == len {
            out.push(Word::new(current.clone()).expect("nonempty"));
            return;
        }
        let last = *current.last().expect("nonempty");
        let remaining = len - current.len() - 1;
        for next in self.symbols() {
            if self.allows(last, next) && reach[remaining][next as usize - 1] {
                current.push(next);
                self.lex_dfs(current, len, reach, want, out);
                current.pop();
                if out.len() >= want {
                    return;
                }
            }
        }
    }

    fn search_limit(&self) -> usize {
        (4 * self.size() * self.size()).max(64)
    }

    /// Two distinct admissible words of equal minimal length, both running
    /// from `a0` to a symbol `a'` with `a_{a' a0} = 1`.
    pub fn find_equal_length_pair(&self, a0: Symbol) -> Result<WordPairGadget, TransitionError> {
        self.check_symbol(a0)?;
        let m = self.size();
        // paths[j]: number of admissible words of the current length from a0 ending in j.
        let mut paths = vec![BigUint::zero(); m];
        paths[a0 as usize - 1] = BigUint::one();
        let two = BigUint::from(2u32);
        for len in 1..=self.search_limit() {
            if len > 1 {
                paths = self.step_counts(&paths);
            }
            let end = self
                .symbols()
                .find(|&e| self.allows(e, a0) && paths[e as usize - 1] >= two);
            if let Some(a_prime) = end {
                let mut accept = vec![false; m];
                accept[a_prime as usize - 1] = true;
                let words = self.lex_first_words(&[a0], len, &accept, 2);
                let [v1, v2]: [Word; 2] = words.try_into().expect("path count is at least two");
                return Ok(WordPairGadget {
                    a0,
                    a_prime,
                    v1,
                    v2,
                    l: len,
                });
            }
        }
        Err(TransitionError::NotFound {
            what: "equal-length word pair",
            a0,
        })
    }

    /// Shortest admissible word `(i ... j)` with `a_{a0 i} = a_{j a0} = 1`.
    pub fn find_connector(&self, a0: Symbol) -> Result<Word, TransitionError> {
        self.check_symbol(a0)?;
        let starts: Vec<Symbol> = self.successors(a0).collect();
        let accept: Vec<bool> = self.symbols().map(|j| self.allows(j, a0)).collect();
        for len in 1..=self.size() {
            if let Some(w) = self.lex_first_words(&starts, len, &accept, 1).pop() {
                return Ok(w);
            }
        }
        Err(TransitionError::NotFound {
            what: "connector word",
            a0,
        })
    }
}

/// Two distinct admissible words `v1 != v2` of common length `l`, both
/// starting at `a0` and ending at `a_prime`, with `a_{a_prime a0} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordPairGadget {
    pub a0: Symbol,
    pub a_prime: Symbol,
    pub v1: Word,
    pub v2: Word,
    pub l: usize,
}

impl WordPairGadget {
    /// Re-checks every gadget invariant against `a`.
    pub fn validate(&self, a: &TransitionMatrix) -> bool {
        let admissible = |w: &Word| w.symbols().windows(2).all(|p| a.allows(p[0], p[1]));
        self.v1 != self.v2
            && self.v1.len() == self.l
            && self.v2.len() == self.l
            && self.v1.first() == self.a0
            && self.v2.first() == self.a0
            && self.v1.last() == self.a_prime
            && self.v2.last() == self.a_prime
            && a.allows(self.a_prime, self.a0)
            && admissible(&self.v1)
            && admissible(&self.v2)
    }

    /// `psi(1) = v1`, `psi(2) = v2`.
    pub fn select(&self, c: Symbol) -> &Word {
        if c == 1 {
            &self.v1
        } else {
            &self.v2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> TransitionMatrix {
        validate_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    // Brute-force oracle: filter all m^n strings.
    fn brute_force_words(a: &TransitionMatrix, n: usize) -> Vec<Word> {
        let m = a.size();
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut symbols = vec![0u8; n];
            let mut c = code;
            for k in (0..n).rev() {
                symbols[k] = (c % m) as u8 + 1;
                c /= m;
            }
            if symbols.windows(2).all(|p| a.allows(p[0], p[1])) {
                out.push(Word::new(symbols).unwrap());
            }
        }
        out
    }

    // Reachability oracle via boolean matrix powers A, A^2, ..., A^m.
    fn irreducible_by_powers(a: &TransitionMatrix) -> bool {
        let m = a.size();
        let base: Vec<Vec<bool>> = (0..m)
            .map(|i| (0..m).map(|j| a.allows(i as u8 + 1, j as u8 + 1)).collect())
            .collect();
        let mut power = base.clone();
        let mut closure = base.clone();
        for _ in 1..m {
            power = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..m).any(|k| power[i][k] && base[k][j]))
                        .collect()
                })
                .collect();
            for i in 0..m {
                for j in 0..m {
                    closure[i][j] |= power[i][j];
                }
            }
        }
        closure.iter().all(|row| row.iter().all(|&b| b))
    }

    #[test]
    fn validate_examples() {
        let a = validate_matrix(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.size(), 2);
        assert!(validate_matrix(&[vec![1, 0], vec![0, 1]]).is_ok());
        assert_eq!(
            validate_matrix(&[vec![0, 0], vec![1, 1]]),
            Err(TransitionError::ZeroRow(1))
        );
        assert_eq!(
            validate_matrix(&[vec![1, 0], vec![1, 0]]),
            Err(TransitionError::ZeroColumn(2))
        );
        assert_eq!(
            validate_matrix(&[vec![1]]),
            Err(TransitionError::TooSmall(1))
        );
        assert_eq!(
            validate_matrix(&[vec![0, 2], vec![1, 1]]),
            Err(TransitionError::NonBinaryEntry {
                row: 1,
                col: 2,
                value: 2
            })
        );
        assert!(matches!(
            validate_matrix(&[vec![0, 1, 1], vec![1, 1]]),
            Err(TransitionError::NotSquare { .. })
        ));
    }

    #[test]
    fn inline_parsing() {
        assert_eq!(
            TransitionMatrix::parse_inline("01;11").unwrap(),
            mat(&[&[0, 1], &[1, 1]])
        );
        assert_eq!(
            TransitionMatrix::parse_inline("0,1; 1,1").unwrap(),
            mat(&[&[0, 1], &[1, 1]])
        );
        assert!(matches!(
            TransitionMatrix::parse_inline("0x;11"),
            Err(TransitionError::Parse(_))
        ));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(mat(&[&[0, 1], &[1, 1]]).is_irreducible());
        assert!(!mat(&[&[1, 0], &[0, 1]]).is_irreducible());
        assert!(mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).is_irreducible());
        assert!(!mat(&[&[1, 1, 0], &[0, 1, 1], &[0, 1, 1]]).is_irreducible());
    }

    #[test]
    fn star_row_examples() {
        assert_eq!(mat(&[&[0, 1], &[1, 1]]).star_row(), Some(2));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).star_row(), None);
        assert_eq!(TransitionMatrix::all_ones(2).star_row(), Some(1));
    }

    #[test]
    fn enumerate_examples() {
        let a = mat(&[&[0, 1], &[1, 1]]);
        assert_eq!(
            a.enumerate_admissible_words(1).unwrap(),
            vec![w("1"), w("2")]
        );
        assert_eq!(
            a.enumerate_admissible_words(3).unwrap(),
            vec![w("121"), w("122"), w("212"), w("221"), w("222")]
        );
        assert_eq!(a.enumerate_admissible_words(5).unwrap().len(), 13);
        assert_eq!(
            a.enumerate_admissible_words(0),
            Err(TransitionError::LengthZero)
        );
    }

    #[test]
    fn equal_length_pair_examples() {
        let a = mat(&[&[0, 1], &[1, 1]]);
        let g = a.find_equal_length_pair(1).unwrap();
        assert_eq!(
            (g.a_prime, g.v1.clone(), g.v2.clone(), g.l),
            (2, w("1212"), w("1222"), 4)
        );
        assert!(g.validate(&a));
        let g = a.find_equal_length_pair(2).unwrap();
        assert_eq!(
            (g.a_prime, g.v1.clone(), g.v2.clone(), g.l),
            (2, w("212"), w("222"), 3)
        );
        let g = TransitionMatrix::all_ones(2)
            .find_equal_length_pair(1)
            .unwrap();
        assert_eq!(
            (g.a_prime, g.v1.clone(), g.v2.clone(), g.l),
            (1, w("111"), w("121"), 3)
        );
    }

    #[test]
    fn equal_length_pair_matches_exhaustive_search() {
        // Oracle: enumerate all words up to length 6, pick the minimal
        // (length, a') with two candidates, then the two lexicographically smallest.
        for a in [
            mat(&[&[0, 1], &[1, 1]]),
            TransitionMatrix::all_ones(2),
            mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]),
            mat(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]]),
        ] {
            for a0 in a.symbols() {
                let mut expected = None;
                'search: for len in 1..=8 {
                    let words = brute_force_words(&a, len);
                    for ap in a.symbols().filter(|&e| a.allows(e, a0)) {
                        let cands: Vec<&Word> = words
                            .iter()
                            .filter(|w| w.first() == a0 && w.last() == ap)
                            .collect();
                        if cands.len() >= 2 {
                            expected = Some((ap, cands[0].clone(), cands[1].clone(), len));
                            break 'search;
                        }
                    }
                }
                let g = a.find_equal_length_pair(a0).unwrap();
                assert_eq!(
                    Some((g.a_prime, g.v1.clone(), g.v2.clone(), g.l)),
                    expected,
                    "{a:?} a0={a0}"
                );
                assert!(g.validate(&a));
            }
        }
    }

    #[test]
    fn equal_length_pair_absent_without_branching() {
        let cycle = mat(&[&[0, 1], &[1, 0]]);
        assert!(matches!(
            cycle.find_equal_length_pair(1),
            Err(TransitionError::NotFound { .. })
        ));
    }

    #[test]
    fn connector_examples() {
        let a = mat(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.find_connector(1).unwrap(), w("2"));
        assert_eq!(a.find_connector(2).unwrap(), w("1"));
        assert_eq!(
            TransitionMatrix::all_ones(3).find_connector(1).unwrap(),
            w("1")
        );
        let cycle3 = mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(cycle3.find_connector(1).unwrap(), w("23"));
    }

    #[test]
    fn word_counts_match_brute_force_and_transfer_matrix() {
        let mats = [
            mat(&[&[0, 1], &[1, 1]]),
            TransitionMatrix::all_ones(3),
            mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]),
            mat(&[&[0, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 0, 1], &[1, 1, 0, 0]]),
        ];
        for a in &mats {
            let max_n = if a.size() == 4 { 8 } else { 10 };
            for n in 1..=max_n {
                let brute = brute_force_words(a, n);
                let words = a.enumerate_admissible_words(n).unwrap();
                assert_eq!(words, brute);
                assert_eq!(
                    a.count_admissible_words(n).unwrap(),
                    BigUint::from(brute.len())
                );
            }
        }
    }

    #[test]
    fn irreducibility_agrees_with_powers_on_all_2x2_and_3x3() {
        for m in 2..=3usize {
            for code in 0u32..(1 << (m * m)) {
                let rows: Vec<Vec<i64>> = (0..m)
                    .map(|i| (0..m).map(|j| ((code >> (i * m + j)) & 1) as i64).collect())
                    .collect();
                if let Ok(a) = validate_matrix(&rows) {
                    assert_eq!(a.is_irreducible(), irreducible_by_powers(&a), "{rows:?}");
                }
            }
        }
    }

    #[test]
    fn gadgets_hold_for_every_irreducible_branching_3x3() {
        for code in 0u32..(1 << 9) {
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|i| (0..3).map(|j| ((code >> (i * 3 + j)) & 1) as i64).collect())
                .collect();
            let Ok(a) = validate_matrix(&rows) else {
                continue;
            };
            if !a.is_irreducible() || a.star_row().is_none() {
                continue;
            }
            for a0 in a.symbols() {
                let g = a.find_equal_length_pair(a0).unwrap();
                assert!(g.validate(&a), "{rows:?}");
                let c = a.find_connector(a0).unwrap();
                assert!(a.allows(a0, c.first()) && a.allows(c.last(), a0));
                assert!(c.symbols().windows(2).all(|p| a.allows(p[0], p[1])));
            }
        }
    }
}
