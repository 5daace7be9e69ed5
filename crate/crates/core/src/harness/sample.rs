//! Physical samples (film, strip) and the generic simulation driver.

use std::sync::Arc;

use super::units::PhysicalUnits;
use crate::demag::DemagKernel;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::integrators::{Integrator, Observer, RunSummary, Scheme, SchemeState, StateView, StepperConfig};
use crate::mesh::Mesh;
use crate::ops::{self, PhysicsParams, StencilOrder};

/// A rectangular Permalloy-like sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub extent_nm: [f64; 3],
    pub cells: [usize; 3],
    pub units: PhysicalUnits,
}

impl Sample {
    /// 480 x 480 x 20 nm^3 film on 100 x 100 x 4 cells.
    pub fn thin_film() -> Self {
        Self { extent_nm: [480.0, 480.0, 20.0], cells: [100, 100, 4], units: PhysicalUnits::permalloy() }
    }

    /// 800 x 100 x 4 nm^3 strip on 128 x 64 x 4 cells.
    pub fn strip() -> Self {
        Self { extent_nm: [800.0, 100.0, 4.0], cells: [128, 64, 4], units: PhysicalUnits::permalloy() }
    }

    pub fn with_cells(mut self, cells: [usize; 3]) -> Self {
        self.cells = cells;
        self
    }

    /// Largest extent, the length unit.
    pub fn length_nm(&self) -> f64 {
        self.extent_nm.iter().cloned().fold(0.0, f64::max)
    }

    pub fn cell_nm(&self) -> [f64; 3] {
        [0, 1, 2].map(|a| self.extent_nm[a] / self.cells[a] as f64)
    }

    pub fn mesh(&self) -> Result<Mesh> {
        let l = self.length_nm();
        if !(l > 0.0) {
            return Err(Error::config("sample extent must be positive"));
        }
        Mesh::new(self.cells, self.extent_nm.map(|e| e / l))
    }

    /// Parameters for damping `alpha` and a field of `field_mt` along +x.
    pub fn physics(&self, alpha: f64, field_mt: f64) -> Result<PhysicsParams> {
        self.units.validate()?;
        PhysicsParams::new(
            self.units.epsilon(self.length_nm() * 1e-9),
            self.units.q(),
            alpha,
            [self.units.field_from_millitesla(field_mt), 0.0, 0.0],
        )
    }

    pub fn kernel(&self) -> Result<Arc<DemagKernel>> {
        Ok(Arc::new(DemagKernel::build(self.mesh()?)?))
    }

    /// Number of steps of `dt_ps` covering `t_ns`; must be whole.
    pub fn steps_for(dt_ps: f64, t_ns: f64) -> Result<usize> {
        if !(dt_ps > 0.0) || !(t_ns >= 0.0) {
            return Err(Error::config("time step must be positive and duration nonnegative"));
        }
        let n = t_ns * 1e3 / dt_ps;
        let r = n.round();
        if (n - r).abs() > 1e-9 * r.max(1.0) {
            return Err(Error::config(format!("{t_ns} ns is not a whole number of {dt_ps} ps steps")));
        }
        Ok(r as usize)
    }
}

/// One physical run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simulation {
    pub scheme: Scheme,
    pub alpha: f64,
    pub dt_ps: f64,
    pub field_mt: f64,
    /// Overrides the scheme's default stencils.
    pub stencil: Option<StencilOrder>,
}

impl Simulation {
    pub fn new(scheme: Scheme, alpha: f64, dt_ps: f64, field_mt: f64) -> Self {
        Self { scheme, alpha, dt_ps, field_mt, stencil: None }
    }

    pub fn integrator(&self, sample: &Sample, kernel: Arc<DemagKernel>) -> Result<Integrator> {
        let mut cfg = StepperConfig::new(self.scheme, sample.units.time_from_ps(self.dt_ps), sample.physics(self.alpha, self.field_mt)?)
            .with_stray_field(true);
        if let Some(o) = self.stencil {
            cfg = cfg.with_stencils(o);
        }
        Integrator::with_kernel(sample.mesh()?, cfg, Some(kernel))
    }

    /// Starts from `initial` (low-order startup included) and integrates for
    /// `t_ns`. Blow-up is reported in the summary.
    pub fn run(
        &self,
        sample: &Sample,
        kernel: Arc<DemagKernel>,
        initial: VectorField,
        t_ns: f64,
        observers: &mut [&mut dyn Observer],
    ) -> Result<(SchemeState, RunSummary)> {
        let steps = Sample::steps_for(self.dt_ps, t_ns)?;
        let mut integ = self.integrator(sample, kernel)?;
        let mut state = integ.initial_state(initial, 0.0)?;
        let t_final = steps as f64 * integ.config().k;
        let summary = integ.run(&mut state, t_final, observers)?;
        Ok((state, summary))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub step: usize,
    pub time_ns: f64,
    pub energy: f64,
}

/// Records the micromagnetic energy every `stride` steps.
#[derive(Debug, Clone)]
pub struct EnergyRecorder {
    stride: usize,
    units: PhysicalUnits,
    pub samples: Vec<EnergySample>,
}

impl EnergyRecorder {
    pub fn new(stride: usize, units: PhysicalUnits) -> Self {
        Self { stride: stride.max(1), units, samples: Vec::new() }
    }
}

impl Observer for EnergyRecorder {
    fn stride(&self) -> usize {
        self.stride
    }

    fn observe(&mut self, view: &StateView<'_>) -> Result<()> {
        let energy = ops::energy(view.m(), view.h_s(), view.physics)?;
        self.samples.push(EnergySample { step: view.step, time_ns: self.units.time_to_ns(view.time), energy });
        Ok(())
    }
}

/// In-plane angle `atan2(m_y, m_x)` on the middle layer, rows along y.
pub fn angle_snapshot(m: &VectorField) -> Vec<Vec<f64>> {
    let mesh = *m.mesh();
    let [nx, ny, nz] = mesh.cells();
    let l = nz / 2;
    (0..ny)
        .map(|j| {
            (0..nx)
                .map(|i| {
                    let v = m.at(mesh.interior_offset(i, j, l));
                    v[1].atan2(v[0])
                })
                .collect()
        })
        .collect()
}
