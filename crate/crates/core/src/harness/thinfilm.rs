//! Relaxation of a uniformly magnetized thin film: stability map and energy
//! dissipation curves.

use std::sync::Arc;

use super::sample::{angle_snapshot, EnergyRecorder, EnergySample, Sample, Simulation};
use crate::demag::DemagKernel;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::integrators::{Observer, Scheme, StateView};
use crate::ops;

/// Relative rise of the energy above its running minimum that marks a
/// zero-field run as unstable.
pub const ENERGY_GROWTH_TOLERANCE: f64 = 1e-2;

/// Consecutive sign-alternating energy increments after which a period-2
/// oscillation is tested for decay.
pub const OSCILLATION_WINDOW: usize = 100;

/// Stops a field-free run whose energy grows or locks into a period-2
/// oscillation.
///
/// Without applied field or forcing the dynamics is dissipative. The
/// projection keeps `|m| = 1`, so an unstable scheme does not diverge:
/// it either saturates in a high-energy disordered state or, when the
/// explicitly extrapolated terms put a root of the step polynomial at
/// `z <= -1`, settles on a non-decaying alternation. The amplitude test of
/// the integrator catches neither.
#[derive(Debug, Clone)]
pub struct EnergyWatch {
    tolerance: f64,
    min: f64,
    last: Option<f64>,
    /// Recent increments, newest last.
    increments: std::collections::VecDeque<f64>,
    alternations: usize,
}

impl EnergyWatch {
    pub fn new(tolerance: f64) -> Self {
        Self { tolerance, min: f64::INFINITY, last: None, increments: Default::default(), alternations: 0 }
    }

    fn blow_up(step: usize, reason: String) -> Error {
        Error::BlowUp { step, reason }
    }

    /// Records the energy of step `step`.
    pub fn feed(&mut self, step: usize, e: f64) -> Result<()> {
        if e > self.min + self.tolerance * self.min.abs() {
            return Err(Self::blow_up(step, format!("energy grew from {:e} to {e:e}", self.min)));
        }
        self.min = self.min.min(e);
        if let Some(prev) = self.last.replace(e) {
            let d = e - prev;
            let alternating = matches!(self.increments.back(), Some(&p) if p * d < 0.0) && d.abs() > 1e-10 * e.abs();
            self.alternations = if alternating { self.alternations + 1 } else { 0 };
            self.increments.push_back(d);
            if self.increments.len() > OSCILLATION_WINDOW + 1 {
                self.increments.pop_front();
            }
            if self.alternations >= OSCILLATION_WINDOW && d.abs() >= 0.5 * self.increments[0].abs() {
                return Err(Self::blow_up(
                    step,
                    format!("persistent period-2 energy oscillation (amplitude {:e})", d.abs()),
                ));
            }
        }
        Ok(())
    }
}

impl Observer for EnergyWatch {
    fn observe(&mut self, view: &StateView<'_>) -> Result<()> {
        let e = ops::energy(view.m(), view.h_s(), view.physics)?;
        self.feed(view.step, e)
    }
}

/// Outcome of one `(scheme, alpha, dt)` film run.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRecord {
    pub scheme: Scheme,
    pub alpha: f64,
    pub dt_ps: f64,
    pub stable: bool,
    pub steps_taken: usize,
    pub steps_requested: usize,
    pub reason: Option<String>,
    pub max_unit_deviation: f64,
    /// In-plane angle on the middle layer of the last accepted state.
    pub snapshot: Vec<Vec<f64>>,
}

impl StabilityRecord {
    pub fn blow_up_ns(&self) -> Option<f64> {
        (!self.stable).then(|| self.steps_taken as f64 * self.dt_ps * 1e-3)
    }
}

fn uniform_x(sample: &Sample) -> Result<VectorField> {
    Ok(VectorField::uniform(sample.mesh()?, [1.0, 0.0, 0.0]))
}

/// Relaxes the film from `m = e1` at zero field for `t_ns`, flagging
/// amplitude blow-up or energy growth.
pub fn thinfilm_run(sample: &Sample, sim: &Simulation, t_ns: f64, kernel: &Arc<DemagKernel>) -> Result<StabilityRecord> {
    let steps_requested = Sample::steps_for(sim.dt_ps, t_ns)?;
    let mut watch = EnergyWatch::new(ENERGY_GROWTH_TOLERANCE);
    let (state, summary) = sim.run(sample, kernel.clone(), uniform_x(sample)?, t_ns, &mut [&mut watch])?;
    Ok(StabilityRecord {
        scheme: sim.scheme,
        alpha: sim.alpha,
        dt_ps: sim.dt_ps,
        stable: !summary.blown_up,
        steps_taken: summary.steps_taken,
        steps_requested,
        reason: summary.reason,
        max_unit_deviation: state.max_unit_deviation(),
        snapshot: angle_snapshot(state.magnetization()),
    })
}

/// Every combination of scheme, damping and step, sorted by
/// `(scheme, dt, alpha)`.
pub fn thinfilm_stability(sample: &Sample, schemes: &[Scheme], alphas: &[f64], dts_ps: &[f64], t_ns: f64) -> Result<Vec<StabilityRecord>> {
    let kernel = sample.kernel()?;
    let mut out = Vec::new();
    for &scheme in schemes {
        for &dt in dts_ps {
            for &alpha in alphas {
                out.push(thinfilm_run(sample, &Simulation::new(scheme, alpha, dt, 0.0), t_ns, &kernel)?);
            }
        }
    }
    out.sort_by(|a, b| a.scheme.cmp(&b.scheme).then(a.dt_ps.total_cmp(&b.dt_ps)).then(a.alpha.total_cmp(&b.alpha)));
    Ok(out)
}

/// Energy time series of one film run.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve {
    pub scheme: Scheme,
    pub alpha: f64,
    pub dt_ps: f64,
    pub samples: Vec<EnergySample>,
    pub blown_up: bool,
    pub max_unit_deviation: f64,
}

impl EnergyCurve {
    /// Largest `(E_{n+1} - E_n) / |E_n|` between consecutive samples
    /// (negative when the sequence strictly decreases).
    pub fn max_relative_increase(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1].energy - w[0].energy) / w[0].energy.abs().max(f64::MIN_POSITIVE))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Energy of the last sample at or before `t_ns`.
    pub fn energy_at(&self, t_ns: f64) -> Option<f64> {
        self.samples.iter().take_while(|s| s.time_ns <= t_ns + 1e-9).last().map(|s| s.energy)
    }
}

/// Energy curves from the uniform state, recorded every `stride` steps.
pub fn energy_curves(
    sample: &Sample,
    schemes: &[Scheme],
    alphas: &[f64],
    dt_ps: f64,
    t_ns: f64,
    stride: usize,
) -> Result<Vec<EnergyCurve>> {
    let kernel = sample.kernel()?;
    let mut out = Vec::new();
    for &scheme in schemes {
        for &alpha in alphas {
            let mut rec = EnergyRecorder::new(stride, sample.units);
            let sim = Simulation::new(scheme, alpha, dt_ps, 0.0);
            let (state, summary) = sim.run(sample, kernel.clone(), uniform_x(sample)?, t_ns, &mut [&mut rec])?;
            out.push(EnergyCurve {
                scheme,
                alpha,
                dt_ps,
                samples: rec.samples,
                blown_up: summary.blown_up,
                max_unit_deviation: state.max_unit_deviation(),
            });
        }
    }
    Ok(out)
}

/// For each scheme, whether the energy at `t_ns` strictly decreases as
/// alpha increases.
pub fn decay_ordering(curves: &[EnergyCurve], t_ns: f64) -> Vec<(Scheme, bool)> {
    let mut schemes: Vec<Scheme> = curves.iter().map(|c| c.scheme).collect();
    schemes.sort();
    schemes.dedup();
    schemes
        .into_iter()
        .map(|s| {
            let mut pts: Vec<(f64, Option<f64>)> = curves.iter().filter(|c| c.scheme == s).map(|c| (c.alpha, c.energy_at(t_ns))).collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let ok = pts.iter().all(|p| p.1.is_some()) && pts.windows(2).all(|w| w[1].1.unwrap() < w[0].1.unwrap());
            (s, ok)
        })
        .collect()
}
