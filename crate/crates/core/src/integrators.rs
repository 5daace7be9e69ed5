//! Semi-implicit BDF1, BDF2 and BDF3 time stepping for the harmonic-map form
//! of the Landau-Lifshitz-Gilbert equation,
//!
//! ```text
//! m_t = a (eps Lap m + f) + a (eps |grad m|^2 - m.f) m - m x (eps Lap m + f),
//! ```
//!
//! where `a` is the damping. The constant-coefficient diffusion
//! `a eps Lap m` is implicit; every other term is extrapolated from the
//! history of projected states, so each step costs three scalar
//! cosine-transform solves followed by a pointwise projection.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::demag::{DemagKernel, DemagWorkspace};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::mesh::Mesh;
use crate::ops::{self, cross3, dot3, PhysicsParams, StencilOrder};
use crate::solver::SolverPlan;

/// Largest `|m~|` accepted before projection.
pub const BLOW_UP_THRESHOLD: f64 = 1e3;

/// Unit-length tolerance for accepted states.
pub const UNIT_TOLERANCE: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Bdf1,
    Bdf2,
    Bdf3,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Bdf1, Scheme::Bdf2, Scheme::Bdf3];

    /// Temporal order, also the number of history states it reads.
    pub fn order(self) -> usize {
        match self {
            Scheme::Bdf1 => 1,
            Scheme::Bdf2 => 2,
            Scheme::Bdf3 => 3,
        }
    }

    fn from_order(order: usize) -> Self {
        match order {
            1 => Scheme::Bdf1,
            2 => Scheme::Bdf2,
            _ => Scheme::Bdf3,
        }
    }

    /// Leading coefficient of the backward difference.
    pub fn implicit_coefficient(self) -> f64 {
        match self {
            Scheme::Bdf1 => 1.0,
            Scheme::Bdf2 => 1.5,
            Scheme::Bdf3 => 11.0 / 6.0,
        }
    }

    /// Weights on `m^{n+p-1}, m^{n+p-2}, ...` (newest first) moved to the
    /// right-hand side.
    pub fn history_weights(self) -> &'static [f64] {
        match self {
            Scheme::Bdf1 => &[1.0],
            Scheme::Bdf2 => &[2.0, -0.5],
            Scheme::Bdf3 => &[3.0, -1.5, 1.0 / 3.0],
        }
    }

    /// Extrapolation weights, newest first.
    pub fn predictor_weights(self) -> &'static [f64] {
        match self {
            Scheme::Bdf1 => &[1.0],
            Scheme::Bdf2 => &[2.0, -1.0],
            Scheme::Bdf3 => &[3.0, -3.0, 1.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Bdf1 => "bdf1",
            Scheme::Bdf2 => "bdf2",
            Scheme::Bdf3 => "bdf3",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bdf1" | "1" => Ok(Scheme::Bdf1),
            "bdf2" | "2" => Ok(Scheme::Bdf2),
            "bdf3" | "3" | "proposed" => Ok(Scheme::Bdf3),
            other => Err(Error::config(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Analytic forcing `g(x, t)` added to the right-hand side.
pub type Forcing = Arc<dyn Fn([f64; 3], f64) -> [f64; 3] + Send + Sync>;

#[derive(Clone)]
pub struct StepperConfig {
    pub scheme: Scheme,
    /// Time step (dimensionless).
    pub k: f64,
    pub physics: PhysicsParams,
    /// Laplacian inside the explicit gyromagnetic term.
    pub stencil_gyro: StencilOrder,
    /// Laplacian in the implicit damping term.
    pub stencil_damp: StencilOrder,
    /// Gradient in the explicit `|grad m|^2 m` term.
    pub stencil_grad: StencilOrder,
    pub forcing: Option<Forcing>,
    pub stray_field: bool,
}

impl fmt::Debug for StepperConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StepperConfig")
            .field("scheme", &self.scheme)
            .field("k", &self.k)
            .field("physics", &self.physics)
            .field("stencil_gyro", &self.stencil_gyro)
            .field("stencil_damp", &self.stencil_damp)
            .field("stencil_grad", &self.stencil_grad)
            .field("forcing", &self.forcing.is_some())
            .field("stray_field", &self.stray_field)
            .finish()
    }
}

impl StepperConfig {
    /// Fourth-order stencils for BDF3, second-order otherwise; no forcing,
    /// stray field off.
    pub fn new(scheme: Scheme, k: f64, physics: PhysicsParams) -> Self {
        let order = match scheme {
            Scheme::Bdf3 => StencilOrder::Fourth,
            _ => StencilOrder::Second,
        };
        Self {
            scheme,
            k,
            physics,
            stencil_gyro: order,
            stencil_damp: order,
            stencil_grad: order,
            forcing: None,
            stray_field: false,
        }
    }

    pub fn with_stencils(mut self, order: StencilOrder) -> Self {
        self.stencil_gyro = order;
        self.stencil_damp = order;
        self.stencil_grad = order;
        self
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn with_stray_field(mut self, on: bool) -> Self {
        self.stray_field = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(Error::config(format!("time step must be positive, got {}", self.k)));
        }
        self.physics.validate()
    }
}

/// One accepted time level.
#[derive(Debug, Clone)]
pub struct HistoryEntry {
    /// Projected magnetization, ghosts filled.
    pub m: VectorField,
    /// Stray field of `m` (zero when disabled).
    pub h_s: VectorField,
    /// Source term evaluated at `m`.
    pub f: VectorField,
}

/// History of up to three accepted states plus clock.
#[derive(Debug, Clone)]
pub struct SchemeState {
    history: VecDeque<HistoryEntry>,
    t0: f64,
    k: f64,
    step_count: usize,
    blown_up: Option<String>,
    max_unit_deviation: f64,
}

impl SchemeState {
    pub fn time(&self) -> f64 {
        self.t0 + self.step_count as f64 * self.k
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn blown_up(&self) -> bool {
        self.blown_up.is_some()
    }

    pub fn blow_up_reason(&self) -> Option<&str> {
        self.blown_up.as_deref()
    }

    /// Most recent accepted state.
    pub fn latest(&self) -> &HistoryEntry {
        self.history.back().expect("history is never empty")
    }

    pub fn magnetization(&self) -> &VectorField {
        &self.latest().m
    }

    /// Accepted states, oldest first.
    pub fn history(&self) -> impl Iterator<Item = &HistoryEntry> {
        self.history.iter()
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }

    /// Largest `| |m| - 1 |` over every accepted state so far.
    pub fn max_unit_deviation(&self) -> f64 {
        self.max_unit_deviation
    }

    /// `i`-th newest entry (`0` = latest).
    fn back(&self, i: usize) -> &HistoryEntry {
        &self.history[self.history.len() - 1 - i]
    }
}

/// Read-only view handed to observers.
pub struct StateView<'a> {
    pub step: usize,
    pub time: f64,
    pub state: &'a SchemeState,
    pub physics: &'a PhysicsParams,
}

impl StateView<'_> {
    pub fn m(&self) -> &VectorField {
        &self.state.latest().m
    }

    pub fn h_s(&self) -> &VectorField {
        &self.state.latest().h_s
    }
}

/// Called every `stride()` steps (including step 0) during [`Integrator::run`].
pub trait Observer {
    fn stride(&self) -> usize {
        1
    }

    fn observe(&mut self, view: &StateView<'_>) -> Result<()>;
}

/// Outcome of [`Integrator::run`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub steps_taken: usize,
    pub final_time: f64,
    pub blown_up: bool,
    pub reason: Option<String>,
}

/// Owns the precomputed solver plans and stray-field kernel for one
/// configuration on one mesh.
pub struct Integrator {
    cfg: StepperConfig,
    mesh: Mesh,
    kernel: Option<Arc<DemagKernel>>,
    workspace: Option<Mutex<DemagWorkspace>>,
    plans: [Option<SolverPlan>; 3],
    centers: Vec<[f64; 3]>,
}

impl Integrator {
    pub fn new(mesh: Mesh, cfg: StepperConfig) -> Result<Self> {
        cfg.validate()?;
        let kernel = if cfg.stray_field { Some(Arc::new(DemagKernel::build(mesh)?)) } else { None };
        Self::with_kernel(mesh, cfg, kernel)
    }

    /// Reuses an existing kernel (kernels depend on the mesh only).
    pub fn with_kernel(mesh: Mesh, cfg: StepperConfig, kernel: Option<Arc<DemagKernel>>) -> Result<Self> {
        cfg.validate()?;
        if cfg.stray_field {
            match &kernel {
                Some(k) if *k.mesh() == mesh => {}
                Some(_) => return Err(Error::MeshMismatch),
                None => return Err(Error::config("stray field enabled but no kernel supplied")),
            }
        }
        let [nx, ny, nz] = mesh.cells();
        let h = mesh.spacing();
        let mut centers = Vec::with_capacity(mesh.cell_count());
        for l in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    centers.push([(i as f64 + 0.5) * h[0], (j as f64 + 0.5) * h[1], (l as f64 + 0.5) * h[2]]);
                }
            }
        }
        let kernel = if cfg.stray_field { kernel } else { None };
        let workspace = kernel.as_ref().map(|k| Mutex::new(k.workspace()));
        Ok(Self { cfg, mesh, kernel, workspace, plans: [None, None, None], centers })
    }

    pub fn config(&self) -> &StepperConfig {
        &self.cfg
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn kernel(&self) -> Option<&Arc<DemagKernel>> {
        self.kernel.as_ref()
    }

    /// Stray field and source term of a projected state.
    pub fn evaluate(&self, m: VectorField) -> Result<HistoryEntry> {
        let h_s = match (&self.kernel, &self.workspace) {
            (Some(k), Some(ws)) => {
                let mut ws = ws.lock().unwrap_or_else(|e| e.into_inner());
                k.apply_with(&m, &mut ws)?
            }
            _ => VectorField::zeros(self.mesh),
        };
        let f = ops::assemble_f(&m, &h_s, &self.cfg.physics)?;
        Ok(HistoryEntry { m, h_s, f })
    }

    /// State at `t0` holding the projection of `m0`.
    pub fn initial_state(&self, m0: VectorField, t0: f64) -> Result<SchemeState> {
        if *m0.mesh() != self.mesh {
            return Err(Error::MeshMismatch);
        }
        let mut m = m0;
        ops::project(&mut m)?;
        let dev = m.unit_deviation();
        let entry = self.evaluate(m)?;
        Ok(SchemeState {
            history: VecDeque::from([entry]),
            t0,
            k: self.cfg.k,
            step_count: 0,
            blown_up: None,
            max_unit_deviation: dev,
        })
    }

    /// State whose history holds the projections of `states` (oldest first),
    /// the newest sitting at time `t`. Used to seed exact history.
    pub fn state_from_history(&self, states: Vec<VectorField>, t: f64) -> Result<SchemeState> {
        if states.is_empty() || states.len() > 3 {
            return Err(Error::config("history must hold one to three states"));
        }
        let n = states.len();
        let mut history = VecDeque::with_capacity(3);
        let mut dev = 0.0_f64;
        for mut m in states {
            if *m.mesh() != self.mesh {
                return Err(Error::MeshMismatch);
            }
            ops::project(&mut m)?;
            dev = dev.max(m.unit_deviation());
            history.push_back(self.evaluate(m)?);
        }
        Ok(SchemeState {
            history,
            t0: t - (n - 1) as f64 * self.cfg.k,
            k: self.cfg.k,
            step_count: n - 1,
            blown_up: None,
            max_unit_deviation: dev,
        })
    }

    /// Initial state advanced through the low-order startup steps: BDF1
    /// then BDF2 for BDF3, BDF1 for BDF2, nothing for BDF1.
    pub fn startup(&mut self, initial: VectorField, t0: f64) -> Result<SchemeState> {
        let mut state = self.initial_state(initial, t0)?;
        while state.history.len() < self.cfg.scheme.order() {
            self.step(&mut state)?;
        }
        Ok(state)
    }

    fn plan(&mut self, scheme: Scheme) -> Result<&SolverPlan> {
        let idx = scheme.order() - 1;
        if self.plans[idx].is_none() {
            let p = &self.cfg.physics;
            let b = self.cfg.k * p.alpha * p.epsilon;
            self.plans[idx] = Some(SolverPlan::new(self.mesh, scheme.implicit_coefficient(), b, self.cfg.stencil_damp)?);
        }
        Ok(self.plans[idx].as_ref().expect("plan just built"))
    }

    /// Advances with the configured scheme, or with the highest order the
    /// current history supports during startup.
    pub fn step(&mut self, state: &mut SchemeState) -> Result<()> {
        let order = self.cfg.scheme.order().min(state.history.len());
        self.step_with(state, Scheme::from_order(order))
    }

    pub fn step_bdf1(&mut self, state: &mut SchemeState) -> Result<()> {
        self.step_with(state, Scheme::Bdf1)
    }

    pub fn step_bdf2(&mut self, state: &mut SchemeState) -> Result<()> {
        self.step_with(state, Scheme::Bdf2)
    }

    pub fn step_bdf3(&mut self, state: &mut SchemeState) -> Result<()> {
        self.step_with(state, Scheme::Bdf3)
    }

    fn step_with(&mut self, state: &mut SchemeState, scheme: Scheme) -> Result<()> {
        if let Some(reason) = &state.blown_up {
            return Err(Error::BlowUp { step: state.step_count, reason: reason.clone() });
        }
        if state.history.len() < scheme.order() {
            return Err(Error::config(format!(
                "{scheme} needs {} history states, have {}",
                scheme.order(),
                state.history.len()
            )));
        }
        let t_new = state.time() + self.cfg.k;
        match self.advance(state, scheme, t_new) {
            Ok(entry) => {
                let dev = entry.m.unit_deviation();
                debug_assert!(dev <= UNIT_TOLERANCE, "unit length violated after projection: {dev:e}");
                state.max_unit_deviation = state.max_unit_deviation.max(dev);
                state.history.push_back(entry);
                while state.history.len() > 3 {
                    state.history.pop_front();
                }
                state.step_count += 1;
                Ok(())
            }
            Err(Error::BlowUp { reason, .. }) => {
                state.blown_up = Some(reason.clone());
                Err(Error::BlowUp { step: state.step_count + 1, reason })
            }
            Err(e) => Err(e),
        }
    }

    fn advance(&mut self, state: &SchemeState, scheme: Scheme, t_new: f64) -> Result<HistoryEntry> {
        let blow_up = |reason: String| Error::BlowUp { step: 0, reason };
        let k = self.cfg.k;
        let PhysicsParams { epsilon, alpha, .. } = self.cfg.physics;
        let mesh = self.mesh;

        let pw = scheme.predictor_weights();
        let m_hat = if pw.len() == 1 {
            state.back(0).m.clone()
        } else {
            let terms: Vec<(f64, &VectorField)> = pw.iter().enumerate().map(|(i, &w)| (w, &state.back(i).m)).collect();
            VectorField::combine(&terms)?
        };
        let f_hat = if pw.len() == 1 {
            state.back(0).f.clone()
        } else {
            let terms: Vec<(f64, &VectorField)> = pw.iter().enumerate().map(|(i, &w)| (w, &state.back(i).f)).collect();
            VectorField::combine(&terms)?
        };
        if !m_hat.is_finite() || !f_hat.is_finite() {
            return Err(blow_up("non-finite predictor".into()));
        }

        let lap = ops::laplacian(&m_hat, self.cfg.stencil_gyro);
        let grad2 = ops::grad_norm_sq_with(&m_hat, self.cfg.stencil_grad);
        let hw = scheme.history_weights();

        let mut rhs = VectorField::zeros(mesh);
        for (cell, (o, g2)) in mesh.interior_offsets().zip(grad2.values()).enumerate() {
            let mh = m_hat.at(o);
            let fh = f_hat.at(o);
            let l = lap.at(o);
            let heff = [epsilon * l[0] + fh[0], epsilon * l[1] + fh[1], epsilon * l[2] + fh[2]];
            let gyro = cross3(mh, heff);
            let radial = alpha * (epsilon * g2 - dot3(mh, fh));
            let forcing = match &self.cfg.forcing {
                Some(g) => g(self.centers[cell], t_new),
                None => [0.0; 3],
            };
            let mut v = [0.0; 3];
            for (c, vc) in v.iter_mut().enumerate() {
                let hist: f64 = hw.iter().enumerate().map(|(i, w)| w * state.back(i).m.components()[c][o]).sum();
                *vc = hist + k * (-gyro[c] + alpha * fh[c] + radial * mh[c] + forcing[c]);
            }
            rhs.put(o, v);
        }
        if !rhs.is_finite() {
            return Err(blow_up("non-finite right-hand side".into()));
        }

        let mut m_tilde = self.plan(scheme)?.solve_vector(&rhs)?;
        let peak = m_tilde.max_abs();
        if !peak.is_finite() {
            return Err(blow_up("non-finite intermediate magnetization".into()));
        }
        if peak > BLOW_UP_THRESHOLD {
            return Err(blow_up(format!("|m~| = {peak:e} exceeds {BLOW_UP_THRESHOLD:e}")));
        }
        if let Err(Error::Degenerate { cell, norm }) = ops::project(&mut m_tilde) {
            return Err(blow_up(format!("degenerate projection at cell {cell} (|m~| = {norm:e})")));
        }
        self.evaluate(m_tilde)
    }

    /// Steps until `t_final`, calling observers at their strides. Blow-up ends
    /// the run early and is reported in the summary, not as an error.
    pub fn run(&mut self, state: &mut SchemeState, t_final: f64, observers: &mut [&mut dyn Observer]) -> Result<RunSummary> {
        let span = t_final - state.time();
        let steps_f = span / self.cfg.k;
        let steps = steps_f.round();
        if span < -1e-12 || (steps_f - steps).abs() > 1e-8 * steps.max(1.0) {
            return Err(Error::config(format!(
                "final time {t_final} is not a whole number of steps of {} from t = {}",
                self.cfg.k,
                state.time()
            )));
        }
        let steps = steps as usize;
        let physics = self.cfg.physics;
        let notify = |state: &SchemeState, observers: &mut [&mut dyn Observer]| -> Result<()> {
            for obs in observers.iter_mut() {
                let stride = obs.stride().max(1);
                if state.step_count % stride == 0 {
                    obs.observe(&StateView { step: state.step_count, time: state.time(), state, physics: &physics })?;
                }
            }
            Ok(())
        };
        // An observer may veto the run by reporting a blow-up of its own.
        let flag = |state: &mut SchemeState, r: Result<()>| -> Result<bool> {
            match r {
                Ok(()) => Ok(false),
                Err(Error::BlowUp { reason, .. }) => {
                    state.blown_up = Some(reason);
                    Ok(true)
                }
                Err(e) => Err(e),
            }
        };
        let mut taken = 0;
        let r = notify(state, observers);
        if !flag(state, r)? {
            for _ in 0..steps {
                match self.step(state) {
                    Ok(()) => {}
                    Err(Error::BlowUp { .. }) => break,
                    Err(e) => return Err(e),
                }
                taken += 1;
                let r = notify(state, observers);
                if flag(state, r)? {
                    break;
                }
            }
        }
        Ok(RunSummary {
            steps_taken: taken,
            final_time: state.time(),
            blown_up: state.blown_up(),
            reason: state.blown_up.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, h_e: [f64; 3]) -> PhysicsParams {
        PhysicsParams::new(1.0, 0.0, alpha, h_e).unwrap()
    }

    #[test]
    fn scheme_coefficients_are_consistent() {
        for s in Scheme::ALL {
            // a constant history must be a fixed point of the backward difference
            let sum: f64 = s.history_weights().iter().sum();
            assert!((sum - s.implicit_coefficient()).abs() < 1e-15, "{s}");
            let p: f64 = s.predictor_weights().iter().sum();
            assert_eq!(p, 1.0);
            assert_eq!(s.to_string().parse::<Scheme>().unwrap(), s);
        }
        assert!("bdf4".parse::<Scheme>().is_err());
    }

    #[test]
    fn aligned_uniform_state_is_fixed_point() {
        let mesh = Mesh::new([6, 5, 1], [1.0, 1.0, 1.0]).unwrap();
        let he = [0.0, 0.6, 0.8];
        for scheme in Scheme::ALL {
            let cfg = StepperConfig::new(scheme, 0.01, params(3.0, he));
            let mut integ = Integrator::new(mesh, cfg).unwrap();
            let m0 = VectorField::uniform(mesh, he);
            let mut state = integ.initial_state(m0.clone(), 0.0).unwrap();
            for _ in 0..5 {
                integ.step(&mut state).unwrap();
            }
            let d = VectorField::combine(&[(1.0, state.magnetization()), (-1.0, &m0)]).unwrap();
            assert!(d.max_abs() < 1e-14, "{scheme}: {}", d.max_abs());
            assert_eq!(state.step_count(), 5);
        }
    }

    #[test]
    fn startup_is_bdf1_then_bdf2() {
        let mesh = Mesh::unit_line(16).unwrap();
        let m0 = VectorField::from_fn(mesh, |x| {
            let th = (std::f64::consts::PI * x[0]).cos();
            [th.cos(), th.sin(), 0.5]
        });
        let cfg = StepperConfig::new(Scheme::Bdf3, 1e-3, params(5.0, [0.1, 0.0, 0.0]));
        let mut a = Integrator::new(mesh, cfg.clone()).unwrap();
        let started = a.startup(m0.clone(), 0.0).unwrap();
        assert_eq!(started.step_count(), 2);
        assert_eq!(started.history_len(), 3);

        let mut b = Integrator::new(mesh, cfg).unwrap();
        let mut manual = b.initial_state(m0, 0.0).unwrap();
        b.step_bdf1(&mut manual).unwrap();
        b.step_bdf2(&mut manual).unwrap();
        assert_eq!(manual.magnetization(), started.magnetization());

        let mut c = Integrator::new(mesh, StepperConfig::new(Scheme::Bdf1, 1e-3, params(5.0, [0.0; 3]))).unwrap();
        let s = c.startup(VectorField::uniform(mesh, [1.0, 0.0, 0.0]), 0.0).unwrap();
        assert_eq!(s.step_count(), 0);
    }

    #[test]
    fn bdf3_requires_history() {
        let mesh = Mesh::unit_line(8).unwrap();
        let mut integ = Integrator::new(mesh, StepperConfig::new(Scheme::Bdf3, 0.1, params(1.0, [0.0; 3]))).unwrap();
        let mut s = integ.initial_state(VectorField::uniform(mesh, [0.0, 0.0, 1.0]), 0.0).unwrap();
        assert!(matches!(integ.step_bdf3(&mut s), Err(Error::Config(_))));
    }

    #[test]
    fn run_checks_final_time() {
        let mesh = Mesh::unit_line(8).unwrap();
        let mut integ = Integrator::new(mesh, StepperConfig::new(Scheme::Bdf2, 0.1, params(1.0, [0.0; 3]))).unwrap();
        let mut s = integ.initial_state(VectorField::uniform(mesh, [0.0, 0.0, 1.0]), 0.0).unwrap();
        assert!(matches!(integ.run(&mut s, 0.25, &mut []), Err(Error::Config(_))));
        let before = s.magnetization().clone();
        let summary = integ.run(&mut s, 0.0, &mut []).unwrap();
        assert_eq!(summary.steps_taken, 0);
        assert_eq!(s.magnetization(), &before);
        let summary = integ.run(&mut s, 0.3, &mut []).unwrap();
        assert_eq!(summary.steps_taken, 3);
        assert!((s.time() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn invalid_config_rejected() {
        let mesh = Mesh::unit_line(8).unwrap();
        let cfg = StepperConfig::new(Scheme::Bdf1, -1.0, params(1.0, [0.0; 3]));
        assert!(Integrator::new(mesh, cfg).is_err());
    }
}
