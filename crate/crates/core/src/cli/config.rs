//! Run configuration: a JSON file plus command-line overrides, resolved into
//! checked values.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dfmetrics::Thresholds;
use crate::piecewise::{example32, CodedSystem, MapConfig, PartitionConfig};
use crate::rational::{parse_rational, pow2, Rational};
use crate::scrambled::AlphaRule;
use crate::symbolic::DEFAULT_MATERIALIZE_CAP;
use crate::transition::TransitionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Phi1,
    Phi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MatrixSource {
    Rows(Vec<Vec<i64>>),
    Inline(String),
}

impl MatrixSource {
    fn build(&self) -> Result<TransitionMatrix, CliError> {
        let a = match self {
            MatrixSource::Rows(rows) => TransitionMatrix::from_rows(rows),
            MatrixSource::Inline(text) => TransitionMatrix::parse_inline(text),
        };
        a.map_err(|e| CliError::Config(format!("matrix: {e}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ThresholdsFile {
    pub hi: String,
    pub lo: String,
}

/// On-disk shape. Every field is optional so a file can hold just a map.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub matrix: Option<MatrixSource>,
    pub map: Option<MapConfig>,
    pub partition: Option<PartitionConfig>,
    pub alpha: Option<String>,
    pub construction: Option<Construction>,
    pub params: Option<usize>,
    pub seed: Option<u64>,
    pub cap: Option<String>,
    pub materialize_cap: Option<usize>,
    pub thresholds: Option<ThresholdsFile>,
    pub tau: Option<String>,
}

/// Where the system and the construction come from.
#[derive(Debug, Clone, Default, Args)]
pub struct SourceArgs {
    /// Combined JSON config; defaults to the bundled example.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Matrix as a JSON file or inline rows such as "01;11".
    #[arg(long)]
    pub matrix: Option<String>,
    /// Map JSON file.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Partition JSON file.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Base point: "(12)", "1(12)" or a finite prefix "1212".
    #[arg(long)]
    pub alpha: Option<String>,
    /// Threshold for the singleton check on alpha's cylinders.
    #[arg(long)]
    pub tau: Option<String>,
    /// Symbol budget when materializing sequences.
    #[arg(long, env = "CHAOSCERT_CAP")]
    pub materialize_cap: Option<usize>,
}

/// Construction parameters shared by `build` and `df`.
#[derive(Debug, Clone, Default, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    /// Number of scrambled parameters to generate.
    #[arg(long)]
    pub params: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exponent cap `s_max`, as a decimal or "2^k".
    #[arg(long)]
    pub cap: Option<String>,
    /// Stop once this many symbols are generated.
    #[arg(long, conflicts_with = "blocks")]
    pub target_len: Option<String>,
    /// Stop after this many scheduled blocks.
    #[arg(long)]
    pub blocks: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub system: CodedSystem,
    pub alpha: Option<AlphaRule>,
    pub construction: Construction,
    pub params: usize,
    pub seed: u64,
    pub cap: Option<BigUint>,
    pub materialize_cap: usize,
    pub thresholds: Thresholds,
    pub tau: Rational,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

/// A positive integer written as decimal digits or `2^k`.
pub fn parse_big(text: &str) -> Result<BigUint, CliError> {
    let t = text.trim();
    let v = match t.split_once('^') {
        Some(("2", k)) => k.trim().parse::<u64>().ok().map(pow2),
        Some(_) => None,
        None => t.parse::<BigUint>().ok(),
    };
    v.ok_or_else(|| CliError::Config(format!("'{text}' is not a decimal integer or 2^k")))
}

/// Reads the config file, or the bundled example when none is given, and
/// applies the matrix, map and partition overrides on top.
pub fn load_file(src: &SourceArgs) -> Result<RunConfigFile, CliError> {
    let mut file = match &src.config {
        Some(p) => parse_json::<RunConfigFile>(&read(p)?, &p.display().to_string())?,
        None => parse_json(example32::CONFIG_JSON, "bundled example")?,
    };
    if let Some(m) = &src.matrix {
        file.matrix = Some(if Path::new(m).is_file() {
            parse_json(&read(Path::new(m))?, m)?
        } else if m.contains(';') {
            MatrixSource::Inline(m.clone())
        } else {
            return Err(CliError::Io(format!(
                "{m}: no such file (inline matrices look like \"01;11\")"
            )));
        });
    }
    if let Some(p) = &src.map {
        file.map = Some(parse_json(&read(p)?, &p.display().to_string())?);
    }
    if let Some(p) = &src.partition {
        file.partition = Some(parse_json(&read(p)?, &p.display().to_string())?);
    }
    Ok(file)
}

impl RunConfigFile {
    pub fn matrix(&self) -> Result<TransitionMatrix, CliError> {
        self.matrix
            .as_ref()
            .ok_or_else(|| CliError::Config("no matrix given".into()))?
            .build()
    }
}

impl RunConfig {
    pub fn load(src: &SourceArgs, build: &BuildArgs) -> Result<Self, CliError> {
        let file = load_file(src)?;
        let missing = |what: &str| CliError::Config(format!("no {what} given"));
        let matrix = file.matrix()?;
        let map = file
            .map
            .as_ref()
            .ok_or_else(|| missing("map"))?
            .build()
            .map_err(|e| CliError::Config(format!("map: {e}")))?;
        let partition = file
            .partition
            .as_ref()
            .ok_or_else(|| missing("partition"))?
            .build()
            .map_err(|e| CliError::Config(format!("partition: {e}")))?;
        let system = CodedSystem::new(map, partition, matrix)
            .map_err(|e| CliError::Config(e.to_string()))?;

        let alpha = src
            .alpha
            .as_ref()
            .or(file.alpha.as_ref())
            .map(|a| {
                a.parse::<AlphaRule>()
                    .map_err(|e| CliError::Config(format!("alpha: {e}")))
            })
            .transpose()?;

        let cap = build
            .cap
            .as_ref()
            .or(file.cap.as_ref())
            .map(|c| parse_big(c))
            .transpose()?;
        if cap.as_ref().is_some_and(Zero::is_zero) {
            return Err(CliError::Config("cap must be positive".into()));
        }
        let materialize_cap = src
            .materialize_cap
            .or(file.materialize_cap)
            .unwrap_or(DEFAULT_MATERIALIZE_CAP);
        if materialize_cap == 0 {
            return Err(CliError::Config("materialize cap must be positive".into()));
        }

        let thresholds = match &file.thresholds {
            Some(t) => Thresholds {
                hi: rational(&t.hi, "thresholds.hi")?,
                lo: rational(&t.lo, "thresholds.lo")?,
            },
            None => Thresholds::default(),
        };
        let tau = rational(
            src.tau.as_ref().or(file.tau.as_ref()).map_or("1e-9", |s| s),
            "tau",
        )?;
        let unit = |q: &Rational| q > &Rational::zero() && q < &Rational::one();
        if !unit(&thresholds.lo) || !unit(&thresholds.hi) || thresholds.lo >= thresholds.hi {
            return Err(CliError::Config("thresholds need 0 < lo < hi < 1".into()));
        }
        if !unit(&tau) {
            return Err(CliError::Config("tau must lie in (0, 1)".into()));
        }

        let params = build.params.or(file.params).unwrap_or(2);
        if params == 0 {
            return Err(CliError::Config("params must be positive".into()));
        }
        Ok(RunConfig {
            system,
            alpha,
            construction: build
                .construction
                .or(file.construction)
                .unwrap_or(Construction::Phi1),
            params,
            seed: build.seed.or(file.seed).unwrap_or(0),
            cap,
            materialize_cap,
            thresholds,
            tau,
        })
    }

    pub fn alpha(&self) -> Result<&AlphaRule, CliError> {
        self.alpha
            .as_ref()
            .ok_or_else(|| CliError::Config("no alpha given (use --alpha)".into()))
    }
}
