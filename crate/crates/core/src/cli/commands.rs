use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;

use super::config::{load_file, parse_big, BuildArgs, Construction, Format, RunConfig};
use super::{BuildCmdArgs, CheckArgs, CliError, DemoArgs, DfArgs, SourceArgs, WordsArgs};
use crate::dfmetrics::{
    analyze_phi1_pair, analyze_phi2_pair, seq_bound_table, BoundRow, DfOptions, PairAnalysis,
    VerdictKind,
};
use crate::piecewise::{CertificateReport, CodedSystem};
use crate::rational::{
    rat, serde_biguint, serde_biguint_vec, serde_rational, serde_rational_opt, Rational,
};
use crate::scrambled::{phi1, phi2, scrambled_params, Extent, Phi1Context, Phi2Context, Schedule};
use crate::symbolic::{format_symbols, Symbol};
use crate::transition::{TransitionMatrix, WordPairGadget};

/// Longest alpha prefix scanned for the singleton check.
const ALPHA_SCAN: usize = 256;
/// Refuse to list more words than this.
const MAX_LISTED_WORDS: u32 = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct AlphaDepth {
    pub alpha: String,
    #[serde(with = "serde_rational")]
    pub tau: Rational,
    /// Length of the first prefix whose cylinder is narrower than `tau`.
    pub symbols: Option<usize>,
    #[serde(with = "serde_rational_opt")]
    pub diameter: Option<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub matrix: TransitionMatrix,
    pub irreducible: bool,
    pub star_row: Option<Symbol>,
    pub certificate: CertificateReport,
    pub alpha: Option<AlphaDepth>,
    /// Every failed clause, certificate and matrix conditions together.
    pub failures: Vec<String>,
}

fn check_report(cfg: &RunConfig) -> CheckReport {
    let sys = &cfg.system;
    let certificate = sys.certify();
    let irreducible = sys.matrix.is_irreducible();
    let star_row = sys.matrix.star_row();
    let mut failures = certificate.failures.clone();
    if !irreducible {
        failures.push("matrix is not irreducible".into());
    }
    if star_row.is_none() {
        failures.push("no row of the matrix has two or more ones".into());
    }
    let alpha = cfg.alpha.as_ref().map(|rule| {
        let n = rule.known_len().unwrap_or(ALPHA_SCAN).min(ALPHA_SCAN);
        let found = rule
            .prefix(n)
            .map_err(|e| e.to_string())
            .and_then(|p| sys.depth_below(&p, &cfg.tau).map_err(|e| e.to_string()));
        let (symbols, diameter) = match found {
            Ok(Some((n, d))) => (Some(n), Some(d)),
            Ok(None) => (None, None),
            Err(e) => {
                failures.push(format!("alpha {rule}: {e}"));
                (None, None)
            }
        };
        AlphaDepth {
            alpha: rule.to_string(),
            tau: cfg.tau.clone(),
            symbols,
            diameter,
        }
    });
    let ok = certificate.is_strict() && irreducible && star_row.is_some() && failures.is_empty();
    CheckReport {
        ok,
        matrix: sys.matrix.clone(),
        irreducible,
        star_row,
        certificate,
        alpha,
        failures,
    }
}

fn require_check(cfg: &RunConfig) -> Result<CheckReport, CliError> {
    let report = check_report(cfg);
    if report.ok {
        Ok(report)
    } else {
        Err(CliError::Failed(format!(
            "check failed: {}",
            report.failures.join("; ")
        )))
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> Result<String, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("report types serialize");
    v.push(b'\n');
    v
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = RunConfig::load(&args.source, &BuildArgs::default())?;
    let report = check_report(&cfg);
    write_json(out, &report)?;
    if let Some(dir) = &args.out {
        write_artifact(dir, "certificate.json", &json_bytes(&report))?;
    }
    Ok(if report.ok { 0 } else { 1 })
}

enum Context {
    Phi1(Phi1Context),
    Phi2(Phi2Context),
}

impl Context {
    fn new(cfg: &RunConfig) -> Result<Self, CliError> {
        let alpha = cfg.alpha()?;
        let failed = |e: crate::scrambled::ScrambledError| CliError::Failed(e.to_string());
        Ok(match cfg.construction {
            Construction::Phi1 => Context::Phi1(
                Phi1Context::new(&cfg.system.matrix, alpha, cfg.cap.clone()).map_err(failed)?,
            ),
            Construction::Phi2 => Context::Phi2(
                Phi2Context::new(&cfg.system.matrix, alpha, None, cfg.cap.clone())
                    .map_err(failed)?,
            ),
        })
    }

    fn gadget(&self) -> &WordPairGadget {
        match self {
            Context::Phi1(c) => &c.gadget,
            Context::Phi2(c) => &c.gadget,
        }
    }

    fn alpha(&self) -> String {
        match self {
            Context::Phi1(c) => c.alpha.to_string(),
            Context::Phi2(c) => format!("({})", c.period),
        }
    }

    fn extent(&self, build: &BuildArgs) -> Result<Extent, CliError> {
        if let Some(n) = &build.target_len {
            return Ok(Extent::Length(parse_big(n)?));
        }
        Ok(Extent::Blocks(build.blocks.unwrap_or(match self {
            Context::Phi1(_) => 12,
            Context::Phi2(_) => 14,
        })))
    }

    fn schedules(
        &self,
        count: usize,
        seed: u64,
        extent: &Extent,
    ) -> Result<Vec<Schedule>, CliError> {
        scrambled_params(count, seed)
            .iter()
            .map(|c| match self {
                Context::Phi1(ctx) => phi1(c, ctx, extent),
                Context::Phi2(ctx) => phi2(c, ctx, extent),
            })
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Failed(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScheduleSummary {
    pub param: String,
    pub entries: usize,
    #[serde(with = "serde_biguint")]
    pub total_len: BigUint,
    pub capped: bool,
    pub file: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildSummary {
    pub construction: Construction,
    /// Base point after rotation to its most frequent symbol.
    pub alpha: String,
    pub gadget: WordPairGadget,
    pub schedules: Vec<ScheduleSummary>,
    pub skeletons_identical: bool,
    /// Leading terms of the shared sequence `(p_k)`.
    #[serde(with = "serde_biguint_vec")]
    pub positions: Vec<BigUint>,
}

pub fn cmd_build(args: &BuildCmdArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = RunConfig::load(&args.source, &args.build)?;
    require_check(&cfg)?;
    let ctx = Context::new(&cfg)?;
    let schedules = ctx.schedules(cfg.params, cfg.seed, &ctx.extent(&args.build)?)?;
    let params = scrambled_params(cfg.params, cfg.seed);
    let skeleton = schedules[0].skeleton();
    let mut summaries = Vec::new();
    for (j, (s, c)) in schedules.iter().zip(&params).enumerate() {
        let file = match &args.out {
            Some(dir) => {
                let mut buf = Vec::new();
                s.write_jsonl(&mut buf)?;
                Some(write_artifact(dir, &format!("schedule_{j}.jsonl"), &buf)?)
            }
            None => None,
        };
        summaries.push(ScheduleSummary {
            param: c.to_string(),
            entries: s.entries().len(),
            total_len: s.total_len().clone(),
            capped: s.any_capped(),
            file,
        });
    }
    let summary = BuildSummary {
        construction: cfg.construction,
        alpha: ctx.alpha(),
        gadget: ctx.gadget().clone(),
        skeletons_identical: schedules.iter().all(|s| s.skeleton() == skeleton),
        schedules: summaries,
        positions: schedules[0].p_sequence().take(args.positions).collect(),
    };
    if let Some(dir) = &args.out {
        let lines: String = summary.positions.iter().map(|p| format!("{p}\n")).collect();
        write_artifact(dir, "positions.txt", lines.as_bytes())?;
        write_artifact(dir, "build.json", &json_bytes(&summary))?;
    }
    write_json(out, &summary)?;
    Ok(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct DfReport {
    pub construction: Construction,
    pub pair: [usize; 2],
    pub params: [String; 2],
    pub capped: bool,
    pub analysis: PairAnalysis,
    /// Closed-form ratio bounds at checkpoints 3..=12 (first construction only).
    pub bounds: Vec<BoundRow>,
    pub bounds_monotone: bool,
    pub files: Vec<String>,
}

fn parse_pair(text: &str) -> Result<[usize; 2], CliError> {
    let bad = || {
        CliError::Config(format!(
            "--pair expects two indices like \"0,1\", got '{text}'"
        ))
    };
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    Ok([
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ])
}

struct DfRun {
    report: DfReport,
    schedules: [Schedule; 2],
}

fn run_df(
    cfg: &RunConfig,
    build: &BuildArgs,
    pair: [usize; 2],
    orbit_len: Option<usize>,
) -> Result<DfRun, CliError> {
    require_check(cfg)?;
    let ctx = Context::new(cfg)?;
    let count = cfg.params.max(pair[0].max(pair[1]) + 1);
    let params = scrambled_params(count, cfg.seed);
    let all = ctx.schedules(count, cfg.seed, &ctx.extent(build)?)?;
    let (a, b) = (all[pair[0]].clone(), all[pair[1]].clone());
    let capped = cfg.cap.is_some();
    let opts = DfOptions {
        thresholds: cfg.thresholds.clone(),
        orbit_len: orbit_len.unwrap_or(if capped { 1000 } else { 0 }),
        materialize_cap: cfg.materialize_cap,
        ..DfOptions::default()
    };
    let failed = |e: crate::dfmetrics::DfError| CliError::Failed(e.to_string());
    let analysis = match &ctx {
        Context::Phi1(c) => analyze_phi1_pair(&cfg.system, c, &a, &b, &opts).map_err(failed)?,
        Context::Phi2(c) => analyze_phi2_pair(&cfg.system, c, &a, &b, &opts).map_err(failed)?,
    };
    let bounds = match ctx {
        Context::Phi1(_) => seq_bound_table(&a, 3..=12),
        Context::Phi2(_) => Vec::new(),
    };
    let bounds_monotone = bounds
        .windows(2)
        .all(|w| w[0].near <= w[1].near && w[0].far >= w[1].far);
    Ok(DfRun {
        report: DfReport {
            construction: cfg.construction,
            pair,
            params: [params[pair[0]].to_string(), params[pair[1]].to_string()],
            capped,
            analysis,
            bounds,
            bounds_monotone,
            files: Vec::new(),
        },
        schedules: [a, b],
    })
}

fn write_curves(report: &mut DfReport, dir: &Path, format: Format) -> Result<(), CliError> {
    let curve = &report.analysis.curve;
    match format {
        Format::Csv => {
            for (name, upper) in [("near_curve.csv", false), ("far_curve.csv", true)] {
                let mut buf = Vec::new();
                curve
                    .write_csv(&mut buf, upper)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                report.files.push(write_artifact(dir, name, &buf)?);
            }
        }
        Format::Json => report
            .files
            .push(write_artifact(dir, "curves.json", &json_bytes(curve))?),
    }
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["j", "s", "near", "far"])
            .map_err(|e| CliError::Io(e.to_string()))?;
        for r in &report.bounds {
            w.write_record([
                r.j.to_string(),
                r.s.to_string(),
                r.near.to_string(),
                r.far.to_string(),
            ])
            .map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    if !report.bounds.is_empty() {
        report.files.push(write_artifact(dir, "bounds.csv", &buf)?);
    }
    let verdict = dir.join("verdict.json").display().to_string();
    report.files.push(verdict);
    write_artifact(dir, "verdict.json", &json_bytes(&*report))?;
    Ok(())
}

pub fn cmd_df(args: &DfArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = RunConfig::load(&args.source, &args.build)?;
    let pair = parse_pair(&args.pair)?;
    let mut run = run_df(&cfg, &args.build, pair, args.orbit_len)?;
    if let Some(dir) = &args.out {
        write_curves(&mut run.report, dir, args.format)?;
    }
    write_json(out, &run.report)?;
    Ok(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiameterRow {
    pub k: usize,
    pub word: String,
    #[serde(with = "serde_rational")]
    pub diameter: Rational,
    #[serde(with = "serde_rational")]
    pub closed_form: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub certified: bool,
    pub diameters: Vec<DiameterRow>,
    pub singleton: AlphaDepth,
    /// `k` with `2k + 1` symbols in the singleton prefix.
    pub singleton_k: Option<usize>,
    pub verdict: VerdictKind,
    #[serde(with = "serde_rational_opt")]
    pub far_s: Option<Rational>,
    pub files: Vec<String>,
}

/// `diam V_{(12)^k 1}` for `k = 0..=8` next to `(2/9)^k`.
pub fn diameter_table(sys: &CodedSystem) -> Result<Vec<DiameterRow>, CliError> {
    (0..=8)
        .map(|k| {
            let mut w: Vec<Symbol> = [1, 2].repeat(k);
            w.push(1);
            let diameter = sys
                .cylinder(&w)
                .map_err(|e| CliError::Failed(e.to_string()))?
                .diameter();
            let closed_form = num_traits::pow(rat(2, 9), k);
            Ok(DiameterRow {
                k,
                word: format_symbols(&w),
                equal: diameter == closed_form,
                diameter,
                closed_form,
            })
        })
        .collect()
}

pub fn cmd_demo(args: &DemoArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let dir = &args.out;
    let source = SourceArgs::default();
    let build = BuildArgs {
        cap: Some("2^64".into()),
        blocks: Some(12),
        ..BuildArgs::default()
    };
    let cfg = RunConfig::load(&source, &build)?;

    let check = require_check(&cfg)?;
    let mut files = vec![write_artifact(
        dir,
        "certificate.json",
        &json_bytes(&check),
    )?];
    writeln!(
        out,
        "check: {} with minimum gap {}",
        check.certificate.verdict.as_str(),
        fmt_opt(&check.certificate.min_gap)
    )?;
    writeln!(
        out,
        "matrix {} irreducible={} star row={:?}",
        check.matrix.to_row_string(),
        check.irreducible,
        check.star_row
    )?;

    let diameters = diameter_table(&cfg.system)?;
    writeln!(
        out,
        "\n k  word                 diam V_w             (2/9)^k"
    )?;
    for r in &diameters {
        writeln!(
            out,
            "{:2}  {:<20} {:<20} {}{}",
            r.k,
            r.word,
            r.diameter.to_string(),
            r.closed_form,
            if r.equal { "" } else { "  MISMATCH" }
        )?;
    }

    let singleton = check
        .alpha
        .clone()
        .ok_or_else(|| CliError::Config("bundled config lacks alpha".into()))?;
    let singleton_k = singleton.symbols.map(|n| (n - 1) / 2);
    writeln!(
        out,
        "\nalpha {}: first cylinder below tau = {} has {} symbols (k = {}), diameter {}",
        singleton.alpha,
        singleton.tau,
        singleton.symbols.map_or("none".into(), |n| n.to_string()),
        singleton_k.map_or("none".into(), |k| k.to_string()),
        fmt_opt(&singleton.diameter)
    )?;

    let run = run_df(&cfg, &build, [0, 1], Some(1000))?;
    for (j, s) in run.schedules.iter().enumerate() {
        let mut buf = Vec::new();
        s.write_jsonl(&mut buf)?;
        files.push(write_artifact(dir, &format!("schedule_{j}.jsonl"), &buf)?);
    }
    let mut report = run.report;
    write_curves(&mut report, dir, Format::Csv)?;
    files.extend(report.files.iter().cloned());
    let a = &report.analysis;
    writeln!(
        out,
        "\nschedules: {} blocks each, capped at 2^64: {}",
        run.schedules[0].entries().len(),
        report.capped
    )?;
    writeln!(
        out,
        "d0 = d(V_v1, V_v2) = {}, window length {}",
        a.d0, a.window_len
    )?;
    writeln!(
        out,
        "verdict: {}",
        serde_json::to_string(&a.verdict.kind)
            .expect("enum serializes")
            .trim_matches('"')
    )?;
    if let Some(n) = &a.verdict.near {
        writeln!(
            out,
            "  near: lower curve >= {} on the whole grid at n = {}",
            approx_str(&n.min_value),
            n.n
        )?;
    }
    if let Some(f) = &a.verdict.far {
        writeln!(
            out,
            "  far: upper curve at s = {} is {} at n = {}",
            f.s,
            approx_str(&f.value),
            f.n
        )?;
    }
    if let Some(o) = &a.orbit_check {
        writeln!(
            out,
            "  exact orbits of length {} stay within the window bounds: {}",
            o.len, o.within_bounds
        )?;
    }

    let demo = DemoReport {
        certified: check.ok,
        diameters,
        singleton,
        singleton_k,
        verdict: a.verdict.kind,
        far_s: a.verdict.far.as_ref().map(|f| f.s.clone()),
        files: files.clone(),
    };
    write_artifact(dir, "demo.json", &json_bytes(&demo))?;
    writeln!(out, "\nartifacts written to {}", dir.display())?;
    Ok(0)
}

fn fmt_opt(q: &Option<Rational>) -> String {
    q.as_ref().map_or("none".into(), |q| q.to_string())
}

fn approx_str(q: &Rational) -> String {
    format!("{:.6} (approx.)", crate::rational::approx(q))
}

#[derive(Debug, Clone, Serialize)]
struct WordsReport {
    matrix: TransitionMatrix,
    #[serde(with = "serde_biguint_vec")]
    counts: Vec<BigUint>,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<Vec<String>>,
}

pub fn cmd_words(args: &WordsArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let a = load_file(&args.source)?.matrix()?;
    if args.length == 0 {
        return Err(CliError::Config("--length must be at least 1".into()));
    }
    let failed = |e: crate::transition::TransitionError| CliError::Failed(e.to_string());
    let counts: Vec<BigUint> = (1..=args.length)
        .map(|n| a.count_admissible_words(n))
        .collect::<Result<_, _>>()
        .map_err(failed)?;
    let words = if args.count_only {
        None
    } else {
        let last = counts.last().expect("length >= 1");
        if last > &BigUint::from(MAX_LISTED_WORDS) {
            return Err(CliError::Config(format!(
                "{last} words is too many to list; use --count-only"
            )));
        }
        Some(
            a.enumerate_admissible_words(args.length)
                .map_err(failed)?
                .iter()
                .map(|w| w.to_string())
                .collect(),
        )
    };
    let report = WordsReport {
        matrix: a,
        counts,
        length: args.length,
        words,
    };
    match args.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let err = |e: csv::Error| CliError::Io(e.to_string());
            match &report.words {
                Some(words) => {
                    w.write_record(["word"]).map_err(err)?;
                    for word in words {
                        w.write_record([word]).map_err(err)?;
                    }
                }
                None => {
                    w.write_record(["length", "count"]).map_err(err)?;
                    for (n, c) in report.counts.iter().enumerate() {
                        w.write_record([(n + 1).to_string(), c.to_string()])
                            .map_err(err)?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(0)
}
