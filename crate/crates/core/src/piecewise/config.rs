//! JSON shapes for maps and partitions. Rationals travel as "p/q" strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    AffinePiece, IntervalSet, Partition, PiecewiseAffineMap, PiecewiseError, RationalInterval,
};
use crate::rational::{parse_rational, Rational};
use crate::symbolic::Symbol;

/// One `[lo, hi]` pair or a list of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntervalsConfig {
    One([String; 2]),
    Many(Vec<[String; 2]>),
}

impl IntervalsConfig {
    pub fn from_set(set: &IntervalSet) -> Self {
        let pairs: Vec<[String; 2]> = set
            .parts()
            .iter()
            .map(|p| [p.lo.to_string(), p.hi.to_string()])
            .collect();
        if pairs.len() == 1 {
            IntervalsConfig::One(pairs[0].clone())
        } else {
            IntervalsConfig::Many(pairs)
        }
    }

    pub fn to_set(&self) -> Result<IntervalSet, PiecewiseError> {
        let pairs: &[[String; 2]] = match self {
            IntervalsConfig::One(p) => std::slice::from_ref(p),
            IntervalsConfig::Many(v) => v,
        };
        let mut parts = Vec::with_capacity(pairs.len());
        for [lo, hi] in pairs {
            let iv = RationalInterval::new(parse(lo)?, parse(hi)?).ok_or_else(|| {
                PiecewiseError::Config(format!("interval [{lo}, {hi}] has lo > hi"))
            })?;
            parts.push(iv);
        }
        Ok(IntervalSet::from_intervals(parts))
    }
}

fn parse(text: &str) -> Result<Rational, PiecewiseError> {
    parse_rational(text).map_err(|e| PiecewiseError::Config(format!("{text:?}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceConfig {
    pub lo: String,
    pub hi: String,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub slope: String,
    pub intercept: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<IntervalsConfig>,
    pub pieces: Vec<PieceConfig>,
}

impl MapConfig {
    pub fn build(&self) -> Result<PiecewiseAffineMap, PiecewiseError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(AffinePiece {
                    lo: parse(&p.lo)?,
                    hi: parse(&p.hi)?,
                    lo_closed: p.lo_closed,
                    hi_closed: p.hi_closed,
                    slope: parse(&p.slope)?,
                    intercept: parse(&p.intercept)?,
                })
            })
            .collect::<Result<Vec<_>, PiecewiseError>>()?;
        match &self.domain {
            Some(d) => PiecewiseAffineMap::with_domain(pieces, &d.to_set()?),
            None => PiecewiseAffineMap::new(pieces),
        }
    }

    pub fn from_map(f: &PiecewiseAffineMap) -> Self {
        MapConfig {
            domain: Some(IntervalsConfig::from_set(f.domain())),
            pieces: f
                .pieces()
                .iter()
                .map(|p| PieceConfig {
                    lo: p.lo.to_string(),
                    hi: p.hi.to_string(),
                    lo_closed: p.lo_closed,
                    hi_closed: p.hi_closed,
                    slope: p.slope.to_string(),
                    intercept: p.intercept.to_string(),
                })
                .collect(),
        }
    }
}

/// `{"1": ["0", "1"], "2": ["2", "3"]}`; labels must be exactly `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionConfig(pub BTreeMap<String, IntervalsConfig>);

impl PartitionConfig {
    pub fn build(&self) -> Result<Partition, PiecewiseError> {
        let mut labelled: Vec<(Symbol, IntervalSet)> = Vec::with_capacity(self.0.len());
        for (label, sets) in &self.0 {
            let symbol: Symbol = label.trim().parse().map_err(|_| {
                PiecewiseError::Config(format!("partition label {label:?} is not a symbol"))
            })?;
            labelled.push((symbol, sets.to_set()?));
        }
        labelled.sort_by_key(|(s, _)| *s);
        for (i, (s, _)) in labelled.iter().enumerate() {
            if *s as usize != i + 1 {
                return Err(PiecewiseError::Config(format!(
                    "partition labels must be 1..={}, found {s}",
                    labelled.len()
                )));
            }
        }
        Partition::new(labelled.into_iter().map(|(_, set)| set).collect())
    }

    pub fn from_partition(p: &Partition) -> Self {
        PartitionConfig(
            p.parts()
                .iter()
                .enumerate()
                .map(|(i, set)| ((i + 1).to_string(), IntervalsConfig::from_set(set)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::example32;

    #[test]
    fn round_trip_example_map_and_partition() {
        let f = example32::map();
        let cfg = MapConfig::from_map(&f);
        let json = serde_json::to_string(&cfg).unwrap();
        let back: MapConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), f);

        let p = example32::partition();
        let json = serde_json::to_string(&PartitionConfig::from_partition(&p)).unwrap();
        assert_eq!(json, r#"{"1":["0","1"],"2":["2","3"]}"#);
        let back: PartitionConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), p);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad: PartitionConfig =
            serde_json::from_str(r#"{"1":["0","1"],"3":["2","3"]}"#).unwrap();
        assert!(bad.build().is_err());
        let bad: PartitionConfig =
            serde_json::from_str(r#"{"1":["1","0"],"2":["2","3"]}"#).unwrap();
        assert!(bad.build().is_err());
        let bad: PartitionConfig =
            serde_json::from_str(r#"{"1":["x","1"],"2":["2","3"]}"#).unwrap();
        assert!(bad.build().is_err());
        let multi: PartitionConfig =
            serde_json::from_str(r#"{"1":[["0","1"],["4","5"]],"2":["2","3"]}"#).unwrap();
        assert_eq!(multi.build().unwrap().get(1).parts().len(), 2);
    }
}
