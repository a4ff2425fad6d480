//! Exact check of the coupled-expansion hypotheses for a partition and matrix.

use num_traits::Zero;
use serde::Serialize;

use super::{IntervalSet, Partition, PiecewiseAffineMap};
use crate::rational::{serde_rational_matrix, serde_rational_opt, Rational};
use crate::symbolic::Symbol;
use crate::transition::TransitionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "not-CE")]
    NotCoupledExpanding,
    #[serde(rename = "CE")]
    CoupledExpanding,
    #[serde(rename = "strictly-CE")]
    StrictlyCoupledExpanding,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotCoupledExpanding => "not-CE",
            Verdict::CoupledExpanding => "CE",
            Verdict::StrictlyCoupledExpanding => "strictly-CE",
        }
    }
}

/// `f(V_row) ⊇ required`, where `required` is the union of the allowed `V_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub row: Symbol,
    pub image: IntervalSet,
    pub required: IntervalSet,
    pub holds: bool,
}

/// `f(V_symbol)` leaves the domain, so `f` is not a self-map there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EscapeNote {
    pub symbol: Symbol,
    pub image: IntervalSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub rows: Vec<RowCheck>,
    /// `gaps[i][j] = d(V_{i+1}, V_{j+1})`.
    #[serde(serialize_with = "serde_rational_matrix::serialize")]
    pub gaps: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational_opt")]
    pub min_gap: Option<Rational>,
    pub interiors_disjoint: bool,
    pub continuous: bool,
    pub discontinuities: Vec<String>,
    pub escapes: Vec<EscapeNote>,
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn is_strict(&self) -> bool {
        self.verdict == Verdict::StrictlyCoupledExpanding
    }
}

pub fn verify_strict_coupled_expanding(
    f: &PiecewiseAffineMap,
    partition: &Partition,
    a: &TransitionMatrix,
) -> CertificateReport {
    let m = partition.len();
    let mut failures = Vec::new();
    if m != a.size() {
        failures.push(format!(
            "partition has {m} sets but the matrix is {}x{}",
            a.size(),
            a.size()
        ));
    }

    let mut rows = Vec::with_capacity(m);
    let mut escapes = Vec::new();
    for i in 0..m.min(a.size()) {
        let row = i as Symbol + 1;
        let vi = partition.get(row);
        let required = a
            .successors(row)
            .fold(IntervalSet::empty(), |acc, j| acc.union(partition.get(j)));
        let image = match f.image(vi) {
            Ok(img) => img,
            Err(_) => {
                failures.push(format!(
                    "V_{row} = {vi} is not inside the domain {}",
                    f.domain()
                ));
                rows.push(RowCheck {
                    row,
                    image: IntervalSet::empty(),
                    required,
                    holds: false,
                });
                continue;
            }
        };
        let holds = image.contains_set(&required);
        if !holds {
            failures.push(format!(
                "row {row} inclusion fails: f(V_{row}) = {image} does not contain {required}"
            ));
        }
        if !f.domain().contains_set(&image) {
            escapes.push(EscapeNote {
                symbol: row,
                image: image.clone(),
            });
        }
        rows.push(RowCheck {
            row,
            image,
            required,
            holds,
        });
    }

    let mut gaps = vec![vec![Rational::zero(); m]; m];
    let mut min_gap: Option<Rational> = None;
    let mut interiors_disjoint = true;
    #[allow(clippy::needless_range_loop)]
    for i in 0..m {
        for j in i + 1..m {
            let (vi, vj) = (&partition.parts()[i], &partition.parts()[j]);
            let d = vi.distance(vj).expect("partition sets are nonempty");
            if vi.interiors_meet(vj) {
                interiors_disjoint = false;
                failures.push(format!(
                    "V_{} and V_{} have overlapping interiors",
                    i + 1,
                    j + 1
                ));
            }
            if min_gap.as_ref().is_none_or(|g| &d < g) {
                min_gap = Some(d.clone());
            }
            gaps[i][j] = d.clone();
            gaps[j][i] = d;
        }
    }
    let strict = min_gap.as_ref().is_some_and(|g| g > &Rational::zero());
    if !strict && interiors_disjoint {
        failures.push("partition sets touch: minimum gap is 0".to_string());
    }

    let covers = m == a.size() && rows.iter().all(|r| r.holds) && interiors_disjoint;
    let verdict = if !covers {
        Verdict::NotCoupledExpanding
    } else if strict {
        Verdict::StrictlyCoupledExpanding
    } else {
        Verdict::CoupledExpanding
    };
    let discontinuities: Vec<String> = f.discontinuities().iter().map(|x| x.to_string()).collect();
    CertificateReport {
        verdict,
        rows,
        gaps,
        min_gap,
        interiors_disjoint,
        continuous: discontinuities.is_empty(),
        discontinuities,
        escapes,
        failures,
    }
}
