//! Field-driven Néel wall motion in a strip.

use std::sync::Arc;

use super::sample::{Sample, Simulation};
use crate::demag::DemagKernel;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::integrators::{Observer, Scheme, StateView};
use crate::mesh::Mesh;
use crate::ops::StencilOrder;

/// Head-to-head wall `m = (tanh u, sech u, 0)`, `u = (x - center) / width`,
/// with `center` and `width` in mesh units.
pub fn neel_wall(mesh: Mesh, center: f64, width: f64) -> VectorField {
    VectorField::from_fn(mesh, |x| {
        let u = (x[0] - center) / width;
        [u.tanh(), 1.0 / u.cosh(), 0.0]
    })
}

/// Indices of the one or two middle layers along an axis of `n` cells.
fn middle(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        vec![n / 2]
    } else {
        vec![n / 2 - 1, n / 2]
    }
}

/// Zero crossing of `m_x` along x on the strip centre line (mesh units).
///
/// `m_x` is averaged over the middle row(s) in y and z, then the single sign
/// change is located by linear interpolation between cell centres.
pub fn wall_position(m: &VectorField) -> Result<f64> {
    let mesh = *m.mesh();
    let [nx, ny, nz] = mesh.cells();
    let h = mesh.spacing()[0];
    let rows: Vec<(usize, usize)> = middle(nz).into_iter().flat_map(|l| middle(ny).into_iter().map(move |j| (j, l))).collect();
    let mx = &m.components()[0];
    let profile: Vec<f64> = (0..nx)
        .map(|i| rows.iter().map(|&(j, l)| mx[mesh.interior_offset(i, j, l)]).sum::<f64>() / rows.len() as f64)
        .collect();
    let mut crossings = Vec::new();
    for i in 0..nx.saturating_sub(1) {
        let (a, b) = (profile[i], profile[i + 1]);
        if a == 0.0 {
            crossings.push((i as f64 + 0.5) * h);
        } else if a * b < 0.0 {
            crossings.push((i as f64 + 0.5 + a / (a - b)) * h);
        }
    }
    if nx > 0 && profile[nx - 1] == 0.0 {
        crossings.push((nx as f64 - 0.5) * h);
    }
    match crossings.len() {
        1 => Ok(crossings[0]),
        0 => Err(Error::Locator(format!(
            "no m_x sign change on the centre line (m_x ranges {:.3}..{:.3})",
            profile.iter().cloned().fold(f64::INFINITY, f64::min),
            profile.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        ))),
        n => Err(Error::Locator(format!("{n} m_x sign changes on the centre line at {crossings:?}"))),
    }
}

/// Least-squares line with coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::config("linear fit needs two or more paired points"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::config("linear fit abscissae have no spread"));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit { slope, intercept: my - slope * mx, r2 })
}

/// Fraction of a run discarded as transient before the velocity fit.
pub const TRANSIENT_FRACTION: f64 = 0.25;

/// Wall positions against time for one `(alpha, field)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct WallTrack {
    pub alpha: f64,
    pub field_mt: f64,
    pub times_ns: Vec<f64>,
    pub positions_nm: Vec<f64>,
    /// Run length requested, ns.
    pub duration_ns: f64,
    /// The wall neared an end (or was lost) before the run finished.
    pub truncated: bool,
    /// Position against time over the fit window; slope in nm/ns = m/s.
    pub fit: Option<LinearFit>,
    /// Largest `| |m| - 1 |` over the driven run.
    pub max_unit_deviation: f64,
}

impl WallTrack {
    /// Fits the samples after the transient window. Needs three points.
    pub fn fit_velocity(&mut self) -> Result<LinearFit> {
        let start = TRANSIENT_FRACTION * self.duration_ns;
        let (t, x): (Vec<f64>, Vec<f64>) =
            self.times_ns.iter().zip(&self.positions_nm).filter(|(t, _)| **t >= start - 1e-12).map(|(t, x)| (*t, *x)).unzip();
        if t.len() < 3 {
            return Err(Error::Locator(format!("only {} wall samples inside the fit window", t.len())));
        }
        let fit = linear_fit(&t, &x)?;
        self.fit = Some(fit);
        Ok(fit)
    }

    /// Wall speed in m/s (the sign only says which domain grows).
    pub fn speed(&self) -> Option<f64> {
        self.fit.map(|f| f.slope.abs())
    }
}

/// Observer sampling the wall position during a driven run.
pub struct WallTracker {
    stride: usize,
    length_nm: f64,
    tau_ns: f64,
    margin_nm: f64,
    pub times_ns: Vec<f64>,
    pub positions_nm: Vec<f64>,
    pub truncated: bool,
}

impl WallTracker {
    pub fn new(stride: usize, sample: &Sample, margin_nm: f64) -> Self {
        Self {
            stride: stride.max(1),
            length_nm: sample.length_nm(),
            tau_ns: sample.units.tau0() * 1e9,
            margin_nm,
            times_ns: Vec::new(),
            positions_nm: Vec::new(),
            truncated: false,
        }
    }
}

impl Observer for WallTracker {
    fn stride(&self) -> usize {
        self.stride
    }

    fn observe(&mut self, view: &StateView<'_>) -> Result<()> {
        if self.truncated {
            return Ok(());
        }
        let extent_nm = view.m().mesh().extent()[0] * self.length_nm;
        match wall_position(view.m()) {
            Ok(x) => {
                let x_nm = x * self.length_nm;
                if x_nm < self.margin_nm || x_nm > extent_nm - self.margin_nm {
                    self.truncated = true;
                } else {
                    self.times_ns.push(view.time * self.tau_ns);
                    self.positions_nm.push(x_nm);
                }
            }
            Err(_) => self.truncated = true,
        }
        Ok(())
    }
}

/// Setup shared by every point of a wall sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallExperiment {
    pub sample: Sample,
    pub scheme: Scheme,
    pub dt_ps: f64,
    /// Zero-field relaxation before the field is switched on.
    pub relax_ns: f64,
    /// Driven run length.
    pub run_ns: f64,
    /// Initial wall centre as a fraction of the strip length.
    pub center_fraction: f64,
    /// Initial wall width parameter, nm.
    pub width_nm: f64,
    /// Steps between wall samples.
    pub stride: usize,
    pub stencil: Option<StencilOrder>,
}

impl WallExperiment {
    /// 800 x 100 x 4 nm^3 strip, 1 ps steps, 0.2 ns relaxation, 1.6 ns
    /// drive. A +x field grows the +x domain on the right, so the wall
    /// starts at three quarters of the strip and travels towards -x.
    pub fn standard(scheme: Scheme) -> Self {
        let sample = Sample::strip();
        Self {
            sample,
            scheme,
            dt_ps: 1.0,
            relax_ns: 0.2,
            run_ns: 1.6,
            center_fraction: 0.75,
            width_nm: 2.0 * sample.units.exchange_length() * 1e9,
            stride: 10,
            stencil: None,
        }
    }

    fn simulation(&self, alpha: f64, field_mt: f64) -> Simulation {
        Simulation { scheme: self.scheme, alpha, dt_ps: self.dt_ps, field_mt, stencil: self.stencil }
    }

    pub fn initial_state(&self) -> Result<VectorField> {
        let mesh = self.sample.mesh()?;
        let l = self.sample.length_nm();
        Ok(neel_wall(mesh, self.center_fraction * self.sample.extent_nm[0] / l, self.width_nm / l))
    }

    /// Initial wall relaxed at zero field.
    pub fn relaxed_state(&self, alpha: f64, kernel: &Arc<DemagKernel>) -> Result<VectorField> {
        let (state, summary) = self.simulation(alpha, 0.0).run(&self.sample, kernel.clone(), self.initial_state()?, self.relax_ns, &mut [])?;
        if summary.blown_up {
            return Err(Error::BlowUp { step: summary.steps_taken, reason: summary.reason.unwrap_or_default() });
        }
        Ok(state.magnetization().clone())
    }

    /// Drives a relaxed wall with `field_mt` along +x and fits its velocity.
    pub fn drive(&self, alpha: f64, field_mt: f64, relaxed: VectorField, kernel: &Arc<DemagKernel>) -> Result<WallTrack> {
        let mut tracker = WallTracker::new(self.stride, &self.sample, 2.0 * self.width_nm);
        let (state, summary) = self.simulation(alpha, field_mt).run(&self.sample, kernel.clone(), relaxed, self.run_ns, &mut [&mut tracker])?;
        if summary.blown_up {
            return Err(Error::BlowUp { step: summary.steps_taken, reason: summary.reason.unwrap_or_default() });
        }
        let mut track = WallTrack {
            alpha,
            field_mt,
            times_ns: tracker.times_ns,
            positions_nm: tracker.positions_nm,
            duration_ns: self.run_ns,
            truncated: tracker.truncated,
            fit: None,
            max_unit_deviation: state.max_unit_deviation(),
        };
        track.fit_velocity()?;
        Ok(track)
    }

    /// Every `(alpha, field)` combination; one relaxation per `alpha`.
    pub fn sweep(&self, alphas: &[f64], fields_mt: &[f64]) -> Result<WallSweep> {
        let kernel = self.sample.kernel()?;
        let mut tracks = Vec::with_capacity(alphas.len() * fields_mt.len());
        for &alpha in alphas {
            let relaxed = self.relaxed_state(alpha, &kernel)?;
            for &field in fields_mt {
                tracks.push(self.drive(alpha, field, relaxed.clone(), &kernel)?);
            }
        }
        WallSweep::from_tracks(tracks)
    }
}

/// Velocity dependence along one row or column of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeRow {
    /// The parameter held fixed (alpha for rows, field for columns).
    pub fixed: f64,
    /// Linear fit of speed against the varied parameter.
    pub linear: LinearFit,
    /// Slope of `log V` against the log of the varied parameter.
    pub normalized_slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WallSweep {
    pub tracks: Vec<WallTrack>,
    /// Speed against field at each fixed alpha.
    pub vs_field: Vec<SlopeRow>,
    /// Speed against alpha at each fixed field.
    pub vs_alpha: Vec<SlopeRow>,
}

impl WallSweep {
    pub fn from_tracks(mut tracks: Vec<WallTrack>) -> Result<Self> {
        tracks.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.field_mt.total_cmp(&b.field_mt)));
        let mut alphas: Vec<f64> = tracks.iter().map(|t| t.alpha).collect();
        alphas.dedup();
        let mut fields: Vec<f64> = tracks.iter().map(|t| t.field_mt).collect();
        fields.sort_by(f64::total_cmp);
        fields.dedup();
        let row = |fixed: f64, pts: Vec<(f64, f64)>| -> Result<Option<SlopeRow>> {
            if pts.len() < 2 {
                return Ok(None);
            }
            let (x, v): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            let linear = linear_fit(&x, &v)?;
            let normalized_slope = if x.iter().chain(&v).all(|p| *p > 0.0) {
                let lx: Vec<f64> = x.iter().map(|p| p.ln()).collect();
                let lv: Vec<f64> = v.iter().map(|p| p.ln()).collect();
                linear_fit(&lx, &lv)?.slope
            } else {
                f64::NAN
            };
            Ok(Some(SlopeRow { fixed, linear, normalized_slope }))
        };
        let speed = |t: &WallTrack| t.speed().ok_or_else(|| Error::Locator("track without a velocity fit".into()));
        let mut vs_field = Vec::new();
        for &a in &alphas {
            let pts = tracks.iter().filter(|t| t.alpha == a).map(|t| Ok((t.field_mt, speed(t)?))).collect::<Result<Vec<_>>>()?;
            vs_field.extend(row(a, pts)?);
        }
        let mut vs_alpha = Vec::new();
        for &f in &fields {
            let pts = tracks.iter().filter(|t| t.field_mt == f).map(|t| Ok((t.alpha, speed(t)?))).collect::<Result<Vec<_>>>()?;
            vs_alpha.extend(row(f, pts)?);
        }
        Ok(Self { tracks, vs_field, vs_alpha })
    }
}
