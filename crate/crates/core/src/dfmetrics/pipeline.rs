//! End-to-end evaluation of a parameter pair: gap, grid, window length,
//! census, curves, verdict, and an optional exact-orbit cross-check.

use num_bigint::BigUint;
use num_traits::Signed;
use serde::Serialize;

use super::census::{symbolic_census, Checkpoint, Mode};
use super::classify::{classify_pair, PairVerdict, Thresholds};
use super::curve::{t_grid, DfCurve, DEFAULT_GRID_POINTS};
use super::orbit::{df_n, orbit};
use super::window::WindowOracle;
use super::DfError;
use crate::piecewise::CodedSystem;
use crate::rational::{int, serde_rational, serde_rational_vec, Rational};
use crate::scrambled::{Phi1Context, Phi2Context, Schedule};
use crate::symbolic::DEFAULT_MATERIALIZE_CAP;

/// Longest window length tried when searching for small cylinders.
pub const MAX_WINDOW_LEN: usize = 512;

#[derive(Debug, Clone)]
pub struct DfOptions {
    pub thresholds: Thresholds,
    pub grid_points: usize,
    /// Count only positions below this.
    pub limit: Option<BigUint>,
    /// Length of the exact-orbit cross-check; 0 skips it.
    pub orbit_len: usize,
    pub materialize_cap: usize,
}

impl Default for DfOptions {
    fn default() -> Self {
        DfOptions {
            thresholds: Thresholds::default(),
            grid_points: DEFAULT_GRID_POINTS,
            limit: None,
            orbit_len: 0,
            materialize_cap: DEFAULT_MATERIALIZE_CAP,
        }
    }
}

/// Exact orbits of representatives of both sequences, checked against the
/// window bounds at every time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub len: usize,
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    pub within_bounds: bool,
    /// `F^{(len)}(d0)` from the exact distances.
    #[serde(with = "serde_rational")]
    pub df_at_d0: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairAnalysis {
    pub mode: Mode,
    #[serde(with = "serde_rational")]
    pub d0: Rational,
    pub window_len: usize,
    #[serde(with = "serde_rational_vec")]
    pub grid: Vec<Rational>,
    pub verdict: PairVerdict,
    pub orbit_check: Option<OrbitCheck>,
    #[serde(skip)]
    pub checkpoints: Vec<Checkpoint>,
    #[serde(skip)]
    pub curve: DfCurve,
}

/// `d(V_{v1}, V_{v2})`.
pub fn gadget_gap(system: &CodedSystem, v1: &[u8], v2: &[u8]) -> Result<Rational, DfError> {
    let a = system.cylinder(v1)?;
    let b = system.cylinder(v2)?;
    Ok(a.distance(&b).expect("cylinders are nonempty"))
}

fn domain_width(system: &CodedSystem) -> Rational {
    system.map.domain().diameter()
}

/// Smallest `N >= l` with `diam V_{a_0 ... a_{N-1}} < t`.
pub fn phi1_window_len(
    system: &CodedSystem,
    ctx: &Phi1Context,
    t: &Rational,
) -> Result<usize, DfError> {
    let prefix = ctx
        .alpha
        .prefix(MAX_WINDOW_LEN.min(ctx.alpha.known_len().unwrap_or(MAX_WINDOW_LEN)))?;
    match system.depth_below(&prefix, t)? {
        Some((n, _)) => Ok(n.max(ctx.gadget.l)),
        None => Err(DfError::WindowNotFound {
            target: t.to_string(),
        }),
    }
}

/// Smallest `N >= l` with `d_{N-1} < t`, where `d_k` is the largest
/// diameter of a length-`k+1` window of `α`.
pub fn phi2_window_len(
    system: &CodedSystem,
    ctx: &Phi2Context,
    t: &Rational,
) -> Result<usize, DfError> {
    for n in 1..=MAX_WINDOW_LEN {
        if &system.periodic_window_diameter(ctx.period.symbols(), n - 1)? < t {
            return Ok(n.max(ctx.gadget.l));
        }
    }
    Err(DfError::WindowNotFound {
        target: t.to_string(),
    })
}

pub fn analyze_phi1_pair(
    system: &CodedSystem,
    ctx: &Phi1Context,
    a: &Schedule,
    b: &Schedule,
    opts: &DfOptions,
) -> Result<PairAnalysis, DfError> {
    let d0 = gadget_gap(system, ctx.gadget.v1.symbols(), ctx.gadget.v2.symbols())?;
    let grid = t_grid(&d0, &domain_width(system), opts.grid_points);
    let k = phi1_window_len(system, ctx, &grid[0])?;
    analyze(system, a, b, opts, Mode::Sequence, d0, grid, k)
}

pub fn analyze_phi2_pair(
    system: &CodedSystem,
    ctx: &Phi2Context,
    a: &Schedule,
    b: &Schedule,
    opts: &DfOptions,
) -> Result<PairAnalysis, DfError> {
    // Any value strictly below the smallest gap between length-l cylinders.
    let d0 = system.min_word_gap(ctx.gadget.l)? / int(2);
    let grid = t_grid(&d0, &domain_width(system), opts.grid_points);
    let k = phi2_window_len(system, ctx, &grid[0])?;
    analyze(system, a, b, opts, Mode::AllTimes, d0, grid, k)
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    system: &CodedSystem,
    a: &Schedule,
    b: &Schedule,
    opts: &DfOptions,
    mode: Mode,
    d0: Rational,
    grid: Vec<Rational>,
    k: usize,
) -> Result<PairAnalysis, DfError> {
    let mut oracle = WindowOracle::new(system, k);
    let checkpoints = symbolic_census(a, b, &mut oracle, mode, opts.limit.as_ref())?;
    let curve = DfCurve::from_checkpoints(grid.clone(), &checkpoints);
    let verdict = classify_pair(&curve, &opts.thresholds, mode, std::slice::from_ref(&d0));
    let orbit_check = if opts.orbit_len > 0 {
        Some(orbit_check(
            &mut oracle,
            a,
            b,
            opts.orbit_len,
            &d0,
            opts.materialize_cap,
        )?)
    } else {
        None
    };
    Ok(PairAnalysis {
        mode,
        d0,
        window_len: k,
        grid,
        verdict,
        orbit_check,
        checkpoints,
        curve,
    })
}

/// Picks `x ∈ V_{φ(c)[0..D]}` and `y` likewise with `D = n + K - 1`, iterates
/// both exactly and checks each distance against its window bracket.
pub fn orbit_check(
    oracle: &mut WindowOracle<'_>,
    a: &Schedule,
    b: &Schedule,
    n: usize,
    d0: &Rational,
    cap: usize,
) -> Result<OrbitCheck, DfError> {
    let k = oracle.window_len();
    let depth = n + k - 1;
    let need = BigUint::from(depth);
    let sa = a.sequence().materialize(&need, cap)?.symbols;
    let sb = b.sequence().materialize(&need, cap)?.symbols;
    let system = oracle.system();
    let x = system.pick_representative(&sa, depth)?;
    let y = system.pick_representative(&sb, depth)?;
    let ox = orbit(&system.map, &x, n)?;
    let oy = orbit(&system.map, &y, n)?;
    let mut distances = Vec::with_capacity(n);
    let mut within = true;
    for i in 0..n {
        let d = (&ox[i] - &oy[i]).abs();
        within &= oracle.bounds(&sa[i..i + k], &sb[i..i + k])?.contains(&d);
        distances.push(d);
    }
    Ok(OrbitCheck {
        len: n,
        df_at_d0: df_n(&distances, d0, n)?,
        x,
        y,
        within_bounds: within,
    })
}
