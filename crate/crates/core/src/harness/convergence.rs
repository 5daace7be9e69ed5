//! Manufactured-solution convergence studies.

use std::time::Instant;

use super::manufactured::ManufacturedCase;
use crate::error::{Error, Result};
use crate::integrators::{Integrator, Scheme, StepperConfig};
use crate::ops::{error_norms, ErrorNorms, StencilOrder};

/// How the history of a multistep scheme is filled before the first
/// full-order step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Startup {
    /// BDF1 then BDF2 steps from the initial state.
    LowOrder,
    /// History sampled from the exact solution.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyOptions {
    /// Overrides the scheme's default stencils.
    pub stencil: Option<StencilOrder>,
    pub startup: Startup,
}

/// Exact history by default: the low-order startup's first BDF1 step leaves
/// an `O(k^2)` error that the damping does not remove, masking the order of
/// the multistep schemes.
impl Default for StudyOptions {
    fn default() -> Self {
        Self { stencil: None, startup: Startup::Exact }
    }
}

/// One converged run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: f64,
    pub h: f64,
    pub cells: usize,
    pub steps: usize,
    pub norms: ErrorNorms,
    pub max_unit_deviation: f64,
    /// Wall time of the stepping loop, seconds.
    pub seconds: f64,
}

/// Rows plus fitted log-log slopes for `(linf, l2, h1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport {
    pub scheme: Scheme,
    pub rows: Vec<ConvergenceRow>,
    pub slopes: [f64; 3],
    /// Whether every norm decreases monotonically along the ladder.
    pub monotone: bool,
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::config("ladder and error columns differ in length"));
    }
    if x.len() < 2 {
        return Err(Error::config("need at least two ladder points to fit an order"));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::config("log-log fit needs positive finite data"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::config("ladder has no spread"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(sxy / sxx)
}

/// Integrates the case on `n` cells per axis with step `k` up to its final
/// time and measures the error against the exact solution.
pub fn run_case(scheme: Scheme, case: &ManufacturedCase, n: usize, k: f64, opts: StudyOptions) -> Result<ConvergenceRow> {
    let mesh = case.mesh(n)?;
    let mut cfg = StepperConfig::new(scheme, k, case.physics()).with_forcing(case.forcing());
    if let Some(order) = opts.stencil {
        cfg = cfg.with_stencils(order);
    }
    let mut integ = Integrator::new(mesh, cfg)?;
    let start = Instant::now();
    let mut state = match opts.startup {
        Startup::LowOrder => integ.initial_state(case.sample(mesh, 0.0), 0.0)?,
        Startup::Exact => {
            let p = scheme.order();
            let hist = (0..p).map(|i| case.sample(mesh, i as f64 * k)).collect();
            integ.state_from_history(hist, (p - 1) as f64 * k)?
        }
    };
    let summary = integ.run(&mut state, case.t_final, &mut [])?;
    let seconds = start.elapsed().as_secs_f64();
    if summary.blown_up {
        return Err(Error::BlowUp { step: summary.steps_taken, reason: summary.reason.unwrap_or_default() });
    }
    let norms = error_norms(state.magnetization(), &case.sample(mesh, case.t_final))?;
    Ok(ConvergenceRow {
        k,
        h: mesh.spacing()[0],
        cells: n,
        steps: state.step_count(),
        norms,
        max_unit_deviation: state.max_unit_deviation(),
        seconds,
    })
}

fn report(scheme: Scheme, rows: Vec<ConvergenceRow>, abscissa: impl Fn(&ConvergenceRow) -> f64) -> Result<OrderReport> {
    let x: Vec<f64> = rows.iter().map(&abscissa).collect();
    let cols = [
        rows.iter().map(|r| r.norms.linf).collect::<Vec<_>>(),
        rows.iter().map(|r| r.norms.l2).collect(),
        rows.iter().map(|r| r.norms.h1).collect(),
    ];
    let mut slopes = [0.0; 3];
    for (s, col) in slopes.iter_mut().zip(&cols) {
        *s = fit_slope(&x, col)?;
    }
    // sort by decreasing abscissa so monotone means "refining reduces error"
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    let monotone = cols.iter().all(|c| order.windows(2).all(|w| c[w[1]] < c[w[0]]));
    Ok(OrderReport { scheme, rows, slopes, monotone })
}

fn check_ladder(len: usize) -> Result<()> {
    if len < 2 {
        return Err(Error::config("need at least two ladder points to fit an order"));
    }
    Ok(())
}

/// Temporal study: varying `k` at fixed resolution.
pub fn convergence_time(
    scheme: Scheme,
    case: &ManufacturedCase,
    k_ladder: &[f64],
    n_fixed: usize,
    opts: StudyOptions,
) -> Result<OrderReport> {
    check_ladder(k_ladder.len())?;
    let rows = k_ladder.iter().map(|&k| run_case(scheme, case, n_fixed, k, opts)).collect::<Result<Vec<_>>>()?;
    report(scheme, rows, |r| r.k)
}

/// Spatial study: varying cell count at fixed `k`.
pub fn convergence_space(
    scheme: Scheme,
    case: &ManufacturedCase,
    n_ladder: &[usize],
    k_fixed: f64,
    opts: StudyOptions,
) -> Result<OrderReport> {
    check_ladder(n_ladder.len())?;
    let rows = n_ladder.iter().map(|&n| run_case(scheme, case, n, k_fixed, opts)).collect::<Result<Vec<_>>>()?;
    report(scheme, rows, |r| r.h)
}

/// Exponent `p` of the coupling `k = h^p`: 2, 1 and 4/3 for BDF1-3.
pub fn coupling_exponent(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Bdf1 => 2.0,
        Scheme::Bdf2 => 1.0,
        Scheme::Bdf3 => 4.0 / 3.0,
    }
}

/// Step count `N0` (with `k = T / N0`) paired with `n` cells per axis:
/// `N0 = floor(T n^p)`, at least one.
pub fn coupled_steps(scheme: Scheme, t_final: f64, n: usize) -> usize {
    ((t_final * (n as f64).powf(coupling_exponent(scheme))).floor() as usize).max(1)
}

/// Coupled study: each rung refines `h` and `k` together; slopes are in `k`.
pub fn convergence_coupled(scheme: Scheme, case: &ManufacturedCase, n_ladder: &[usize], opts: StudyOptions) -> Result<OrderReport> {
    check_ladder(n_ladder.len())?;
    let rows = n_ladder
        .iter()
        .map(|&n| run_case(scheme, case, n, case.t_final / coupled_steps(scheme, case.t_final, n) as f64, opts))
        .collect::<Result<Vec<_>>>()?;
    report(scheme, rows, |r| r.k)
}
