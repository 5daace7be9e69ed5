//! Direct solver for `(a I - b Lap_h) u = r` with reflective (homogeneous
//! Neumann) boundaries.
//!
//! Cell-centred cosine modes `cos(pi j (i + 1/2) / n)` are exact eigenvectors
//! of both difference Laplacians under mirror ghosts, so the system is
//! diagonalised by a type-II cosine transform along each active axis.

mod dct;

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

pub use dct::CosineTransform;

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::mesh::{fill_scalar_ghosts, Mesh};
use crate::ops::{laplacian_scalar, StencilOrder};

/// Eigenvalues of `-Lap_h` along one axis of `n` cells of width `h`.
pub fn axis_eigenvalues(n: usize, h: f64, order: StencilOrder) -> Vec<f64> {
    if n < 2 {
        return vec![0.0; n];
    }
    let ih2 = 1.0 / (h * h);
    (0..n)
        .map(|j| {
            if j == 0 {
                return 0.0;
            }
            let theta = PI * j as f64 / n as f64;
            match order {
                StencilOrder::Second => (2.0 - 2.0 * theta.cos()) * ih2,
                StencilOrder::Fourth => (2.5 - 8.0 / 3.0 * theta.cos() + (2.0 * theta).cos() / 6.0) * ih2,
            }
        })
        .collect()
}

/// Precomputed diagonalisation of `a I - b Lap_h` on one mesh.
#[derive(Debug, Clone)]
pub struct SolverPlan {
    mesh: Mesh,
    a: f64,
    b: f64,
    order: StencilOrder,
    transforms: [Option<CosineTransform>; 3],
    /// Symbol of `-Lap_h` per mode, x-fastest.
    lambda: Vec<f64>,
    /// `1 / (a + b lambda)` per mode.
    inverse_symbol: Vec<f64>,
}

impl SolverPlan {
    pub fn new(mesh: Mesh, a: f64, b: f64, order: StencilOrder) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::config(format!("solver coefficients must be finite and nonnegative, got a={a}, b={b}")));
        }
        if a == 0.0 {
            return Err(Error::Singular("a = 0 leaves the constant mode in the null space".into()));
        }
        let cells = mesh.cells();
        let h = mesh.spacing();
        let eig: Vec<Vec<f64>> = (0..3).map(|ax| axis_eigenvalues(cells[ax], h[ax], order)).collect();
        let mut lambda = Vec::with_capacity(mesh.cell_count());
        for &lz in &eig[2] {
            for &ly in &eig[1] {
                for &lx in &eig[0] {
                    lambda.push(lx + ly + lz);
                }
            }
        }
        let inverse_symbol = lambda.iter().map(|l| 1.0 / (a + b * l)).collect();
        let mut planner = FftPlanner::new();
        let transforms = [0, 1, 2].map(|ax| mesh.is_active(ax).then(|| CosineTransform::new(cells[ax], &mut planner)));
        Ok(Self { mesh, a, b, order, transforms, lambda, inverse_symbol })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn coefficients(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn stencil_order(&self) -> StencilOrder {
        self.order
    }

    /// Symbol `lambda(j)` of `-Lap_h` for every mode, x-fastest.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    /// Solves for `u` given interior values of `r`.
    pub fn solve(&self, rhs: &ScalarField) -> Result<ScalarField> {
        if *rhs.mesh() != self.mesh {
            return Err(Error::MeshMismatch);
        }
        if !rhs.is_finite() {
            return Err(Error::NonFinite("solver right-hand side"));
        }
        let mut u = rhs.clone();
        self.solve_in_place(u.values_mut());
        Ok(u)
    }

    /// In-place solve on interior values in x-fastest order.
    pub fn solve_in_place(&self, values: &mut [f64]) {
        debug_assert_eq!(values.len(), self.mesh.cell_count());
        self.transform(values, true);
        for (v, s) in values.iter_mut().zip(&self.inverse_symbol) {
            *v *= s;
        }
        self.transform(values, false);
    }

    /// Solves each component of a vector right-hand side; ghosts of the
    /// result are filled.
    pub fn solve_vector(&self, rhs: &VectorField) -> Result<VectorField> {
        if *rhs.mesh() != self.mesh {
            return Err(Error::MeshMismatch);
        }
        let mut out = VectorField::zeros(self.mesh);
        for c in 0..3 {
            let mut r = rhs.component(c);
            if !r.is_finite() {
                return Err(Error::NonFinite("solver right-hand side"));
            }
            self.solve_in_place(r.values_mut());
            out.set_component(c, &r)?;
        }
        out.fill_ghosts();
        Ok(out)
    }

    fn transform(&self, values: &mut [f64], forward: bool) {
        let cells = self.mesh.cells();
        let strides = [1, cells[0], cells[0] * cells[1]];
        for (axis, t) in self.transforms.iter().enumerate() {
            let Some(t) = t else { continue };
            let n = cells[axis];
            let s = strides[axis];
            let mut scratch = vec![Complex64::default(); t.scratch_len()];
            let run = |line: &mut [f64], scratch: &mut [Complex64]| {
                if forward {
                    t.forward(line, scratch);
                } else {
                    t.inverse(line, scratch);
                }
            };
            if axis == 0 {
                for line in values.chunks_exact_mut(n) {
                    run(line, &mut scratch);
                }
                continue;
            }
            // Gather the lines of one plane with x innermost so reads stay
            // contiguous, transform, scatter back.
            let (o1, o2) = if axis == 1 { (0, 2) } else { (0, 1) };
            let width = cells[o1];
            let mut block = vec![0.0; width * n];
            for b in 0..cells[o2] {
                let base = b * strides[o2];
                for k in 0..n {
                    let row = &values[base + k * s..base + k * s + width];
                    for (a, v) in row.iter().enumerate() {
                        block[a * n + k] = *v;
                    }
                }
                for line in block.chunks_exact_mut(n) {
                    run(line, &mut scratch);
                }
                for k in 0..n {
                    let row = &mut values[base + k * s..base + k * s + width];
                    for (a, v) in row.iter_mut().enumerate() {
                        *v = block[a * n + k];
                    }
                }
            }
        }
    }

    /// Applies `a I - b Lap_h` to interior values with reflective ghosts.
    pub fn apply_operator(&self, u: &ScalarField) -> Result<ScalarField> {
        if *u.mesh() != self.mesh {
            return Err(Error::MeshMismatch);
        }
        let mesh = self.mesh;
        let mut padded = vec![0.0; mesh.padded_len()];
        for (o, v) in mesh.interior_offsets().zip(u.values()) {
            padded[o] = *v;
        }
        fill_scalar_ghosts(&mesh, &mut padded);
        let mut lap = vec![0.0; mesh.padded_len()];
        laplacian_scalar(&mesh, &padded, &mut lap, self.order);
        let values = mesh.interior_offsets().map(|o| self.a * padded[o] - self.b * lap[o]).collect();
        ScalarField::from_values(mesh, values)
    }
}
