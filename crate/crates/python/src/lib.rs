//! Python bindings: meshes and fields as flat lists, the fast solver, the
//! stray field, the BDF steppers and the experiment drivers.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use llg_core::demag::DemagKernel;
use llg_core::harness::{self, ManufacturedCase, PhysicalUnits, Sample, Simulation, StudyOptions};
use llg_core::integrators::{Integrator, Scheme, SchemeState, StepperConfig};
use llg_core::ops::{self, PhysicsParams, StencilOrder};
use llg_core::solver::SolverPlan;
use llg_core::{Error, Mesh, ScalarField, VectorField};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Index { .. } | Error::MeshMismatch => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn scheme(name: &str) -> PyResult<Scheme> {
    name.parse().map_err(py_err)
}

fn stencil(order: usize) -> PyResult<StencilOrder> {
    StencilOrder::from_order(order).map_err(py_err)
}

fn mesh(cells: [usize; 3], extent: [f64; 3]) -> PyResult<Mesh> {
    Mesh::new(cells, extent).map_err(py_err)
}

fn field(mesh: Mesh, values: Vec<[f64; 3]>) -> PyResult<VectorField> {
    VectorField::from_interior(mesh, &values).map_err(py_err)
}

/// Solves `(a I - b Lap) u = rhs` with homogeneous Neumann conditions.
#[pyfunction]
#[pyo3(signature = (cells, extent, a, b, rhs, order = 2))]
fn solve(cells: [usize; 3], extent: [f64; 3], a: f64, b: f64, rhs: Vec<f64>, order: usize) -> PyResult<Vec<f64>> {
    let mesh = mesh(cells, extent)?;
    let plan = SolverPlan::new(mesh, a, b, stencil(order)?).map_err(py_err)?;
    let rhs = ScalarField::from_values(mesh, rhs).map_err(py_err)?;
    Ok(plan.solve(&rhs).map_err(py_err)?.into_values())
}

/// Stray field of `m` (cell values, x fastest).
#[pyfunction]
fn stray_field(cells: [usize; 3], extent: [f64; 3], m: Vec<[f64; 3]>) -> PyResult<Vec<[f64; 3]>> {
    let mesh = mesh(cells, extent)?;
    let kernel = DemagKernel::build(mesh).map_err(py_err)?;
    Ok(kernel.apply(&field(mesh, m)?).map_err(py_err)?.interior())
}

/// Stray field by direct summation over all cell pairs.
#[pyfunction]
fn stray_field_direct(cells: [usize; 3], extent: [f64; 3], m: Vec<[f64; 3]>) -> PyResult<Vec<[f64; 3]>> {
    let mesh = mesh(cells, extent)?;
    let f = field(mesh, m)?;
    Ok(llg_core::demag::apply_direct(&mesh, &f).map_err(py_err)?.interior())
}

/// Dimensionless `(k, h_e, epsilon, q)` for Permalloy.
#[pyfunction]
fn convert_units(length_nm: f64, k_ps: f64, field_mt: f64) -> PyResult<(f64, f64, f64, f64)> {
    let d = harness::convert_units(&PhysicalUnits::permalloy(), length_nm, k_ps, field_mt).map_err(py_err)?;
    Ok((d.k, d.h_e, d.epsilon, d.q))
}

/// A BDF integrator together with its state.
#[pyclass(unsendable)]
struct Stepper {
    integ: Integrator,
    state: Option<SchemeState>,
}

impl Stepper {
    fn state(&self) -> PyResult<&SchemeState> {
        self.state.as_ref().ok_or_else(|| PyValueError::new_err("no state: call set_state first"))
    }
}

#[pymethods]
impl Stepper {
    #[new]
    #[pyo3(signature = (scheme, k, cells, extent, epsilon, alpha, q = 0.0, h_e = [0.0; 3], stray_field = false, stencil_order = None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        scheme: &str,
        k: f64,
        cells: [usize; 3],
        extent: [f64; 3],
        epsilon: f64,
        alpha: f64,
        q: f64,
        h_e: [f64; 3],
        stray_field: bool,
        stencil_order: Option<usize>,
    ) -> PyResult<Self> {
        let physics = PhysicsParams::new(epsilon, q, alpha, h_e).map_err(py_err)?;
        let mut cfg = StepperConfig::new(self::scheme(scheme)?, k, physics).with_stray_field(stray_field);
        if let Some(o) = stencil_order {
            cfg = cfg.with_stencils(stencil(o)?);
        }
        let integ = Integrator::new(mesh(cells, extent)?, cfg).map_err(py_err)?;
        Ok(Self { integ, state: None })
    }

    /// Starts from `m0` at time `t0`, bootstrapping the history with
    /// lower-order steps.
    #[pyo3(signature = (m0, t0 = 0.0))]
    fn startup(&mut self, m0: Vec<[f64; 3]>, t0: f64) -> PyResult<()> {
        let m0 = field(*self.integ.mesh(), m0)?;
        self.state = Some(self.integ.startup(m0, t0).map_err(py_err)?);
        Ok(())
    }

    /// Installs an explicit history, oldest first; the newest is at `t`.
    fn set_history(&mut self, states: Vec<Vec<[f64; 3]>>, t: f64) -> PyResult<()> {
        let mesh = *self.integ.mesh();
        let hist = states.into_iter().map(|s| field(mesh, s)).collect::<PyResult<Vec<_>>>()?;
        self.state = Some(self.integ.state_from_history(hist, t).map_err(py_err)?);
        Ok(())
    }

    /// Advances `n` steps; returns false if the run blew up.
    #[pyo3(signature = (n = 1))]
    fn step(&mut self, n: usize) -> PyResult<bool> {
        let state = self.state.as_mut().ok_or_else(|| PyValueError::new_err("no state: call startup first"))?;
        for _ in 0..n {
            match self.integ.step(state) {
                Ok(()) => {}
                Err(Error::BlowUp { .. }) => return Ok(false),
                Err(e) => return Err(py_err(e)),
            }
        }
        Ok(true)
    }

    fn magnetization(&self) -> PyResult<Vec<[f64; 3]>> {
        Ok(self.state()?.magnetization().interior())
    }

    fn energy(&self) -> PyResult<f64> {
        let s = self.state()?;
        ops::energy(&s.latest().m, &s.latest().h_s, &self.integ.config().physics).map_err(py_err)
    }

    #[getter]
    fn time(&self) -> PyResult<f64> {
        Ok(self.state()?.time())
    }

    #[getter]
    fn step_count(&self) -> PyResult<usize> {
        Ok(self.state()?.step_count())
    }

    #[getter]
    fn blown_up(&self) -> PyResult<bool> {
        Ok(self.state()?.blown_up())
    }

    #[getter]
    fn max_unit_deviation(&self) -> PyResult<f64> {
        Ok(self.state()?.max_unit_deviation())
    }
}

/// Error norms of one manufactured-solution run.
#[pyfunction]
#[pyo3(signature = (scheme, dim, n, k, alpha = 10.0, t_final = 0.1))]
fn manufactured_run<'py>(py: Python<'py>, scheme: &str, dim: usize, n: usize, k: f64, alpha: f64, t_final: f64) -> PyResult<Bound<'py, PyDict>> {
    let case = ManufacturedCase::new(dim, alpha, t_final).map_err(py_err)?;
    let row = harness::run_case(self::scheme(scheme)?, &case, n, k, StudyOptions::default()).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("k", row.k)?;
    d.set_item("h", row.h)?;
    d.set_item("steps", row.steps)?;
    d.set_item("linf", row.norms.linf)?;
    d.set_item("l2", row.norms.l2)?;
    d.set_item("h1", row.norms.h1)?;
    d.set_item("max_unit_deviation", row.max_unit_deviation)?;
    Ok(d)
}

/// Least-squares slope of `log y` against `log x`.
#[pyfunction]
fn fit_slope(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    harness::fit_slope(&x, &y).map_err(py_err)
}

/// Zero-field thin-film relaxation from `m = e1`; returns
/// `(stable, steps_taken, snapshot)`.
#[pyfunction]
#[pyo3(signature = (scheme, alpha, dt_ps, t_ns, cells = [100, 100, 4]))]
fn thinfilm_run(scheme: &str, alpha: f64, dt_ps: f64, t_ns: f64, cells: [usize; 3]) -> PyResult<(bool, usize, Vec<Vec<f64>>)> {
    let sample = Sample::thin_film().with_cells(cells);
    let kernel: Arc<DemagKernel> = sample.kernel().map_err(py_err)?;
    let sim = Simulation::new(self::scheme(scheme)?, alpha, dt_ps, 0.0);
    let r = harness::thinfilm_run(&sample, &sim, t_ns, &kernel).map_err(py_err)?;
    Ok((r.stable, r.steps_taken, r.snapshot))
}

/// Zero crossing of the wall along x, in mesh units.
#[pyfunction]
fn wall_position(cells: [usize; 3], extent: [f64; 3], m: Vec<[f64; 3]>) -> PyResult<f64> {
    harness::wall_position(&field(mesh(cells, extent)?, m)?).map_err(py_err)
}

#[pymodule]
fn llg_bdf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Stepper>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(stray_field, m)?)?;
    m.add_function(wrap_pyfunction!(stray_field_direct, m)?)?;
    m.add_function(wrap_pyfunction!(convert_units, m)?)?;
    m.add_function(wrap_pyfunction!(manufactured_run, m)?)?;
    m.add_function(wrap_pyfunction!(fit_slope, m)?)?;
    m.add_function(wrap_pyfunction!(thinfilm_run, m)?)?;
    m.add_function(wrap_pyfunction!(wall_position, m)?)?;
    Ok(())
}
