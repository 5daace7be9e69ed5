//! Closed-form test solutions with their compensating forcing.
//!
//! With `eps = 1` and `f = 0` the field
//! `m_e = (cos th sin t, sin th sin t, cos t)` is unit length for any
//! phase `th(x)`; choosing `th` with zero normal derivative on the faces of
//! the unit cube makes it satisfy the Neumann condition too.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::integrators::Forcing;
use crate::mesh::Mesh;
use crate::ops::{cross3, PhysicsParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedCase {
    dim: usize,
    pub alpha: f64,
    pub t_final: f64,
}

impl ManufacturedCase {
    /// `dim` is 1 (`th = cos pi x`) or 3 (`th = cos pi x cos pi y cos pi z`).
    pub fn new(dim: usize, alpha: f64, t_final: f64) -> Result<Self> {
        if dim != 1 && dim != 3 {
            return Err(Error::config(format!("manufactured case must be 1D or 3D, got {dim}D")));
        }
        if !(alpha > 0.0) || !(t_final > 0.0) {
            return Err(Error::config("alpha and final time must be positive"));
        }
        Ok(Self { dim, alpha, t_final })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn physics(&self) -> PhysicsParams {
        PhysicsParams { epsilon: 1.0, q: 0.0, alpha: self.alpha, h_e: [0.0; 3] }
    }

    /// Unit-interval line or unit cube with `n` cells per active axis.
    pub fn mesh(&self, n: usize) -> Result<Mesh> {
        match self.dim {
            1 => Mesh::unit_line(n),
            _ => Mesh::unit_cube(n),
        }
    }

    /// Phase, its gradient and its Laplacian.
    fn phase(&self, x: [f64; 3]) -> (f64, [f64; 3], f64) {
        let (sx, cx) = (PI * x[0]).sin_cos();
        if self.dim == 1 {
            return (cx, [-PI * sx, 0.0, 0.0], -PI * PI * cx);
        }
        let (sy, cy) = (PI * x[1]).sin_cos();
        let (sz, cz) = (PI * x[2]).sin_cos();
        let th = cx * cy * cz;
        (th, [-PI * sx * cy * cz, -PI * cx * sy * cz, -PI * cx * cy * sz], -3.0 * PI * PI * th)
    }

    pub fn exact(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let (th, _, _) = self.phase(x);
        let (s, c) = t.sin_cos();
        [th.cos() * s, th.sin() * s, c]
    }

    /// `g = m_t - a Lap m - a |grad m|^2 m + m x Lap m`.
    pub fn forcing_at(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let (th, grad, lap_th) = self.phase(x);
        let g2 = grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2];
        let (s, c) = t.sin_cos();
        let (sth, cth) = th.sin_cos();
        let m = [cth * s, sth * s, c];
        let mt = [cth * c, sth * c, -s];
        let lap = [s * (-cth * g2 - sth * lap_th), s * (-sth * g2 + cth * lap_th), 0.0];
        let grad_m2 = g2 * s * s;
        let mxl = cross3(m, lap);
        let a = self.alpha;
        [0, 1, 2].map(|i| mt[i] - a * lap[i] - a * grad_m2 * m[i] + mxl[i])
    }

    pub fn forcing(&self) -> Forcing {
        let case = *self;
        Arc::new(move |x, t| case.forcing_at(x, t))
    }

    pub fn sample(&self, mesh: Mesh, t: f64) -> VectorField {
        VectorField::from_fn(mesh, |x| self.exact(x, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn exact_solution_is_unit_length() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for dim in [1, 3] {
            let case = ManufacturedCase::new(dim, 10.0, 0.1).unwrap();
            for _ in 0..1000 {
                let x = [rng.gen(), rng.gen(), rng.gen()];
                let m = case.exact(x, rng.gen_range(0.0..10.0));
                let n = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
                assert!((n - 1.0).abs() <= 1e-14);
            }
        }
    }

    /// The forcing must cancel the residual of the continuous equation;
    /// derivatives here come from centred finite differences of `exact`.
    #[test]
    fn forcing_matches_numerical_residual() {
        let alpha = 3.0;
        for dim in [1, 3] {
            let case = ManufacturedCase::new(dim, alpha, 1.0).unwrap();
            let d = 1e-4;
            for &(x, t) in &[([0.31, 0.47, 0.12], 0.4), ([0.8, 0.05, 0.66], 1.3)] {
                let m = case.exact(x, t);
                let at = |dx: [f64; 3], dt: f64| case.exact([x[0] + dx[0], x[1] + dx[1], x[2] + dx[2]], t + dt);
                let mut lap = [0.0; 3];
                let mut g2 = 0.0;
                for ax in 0..dim {
                    let mut e = [0.0; 3];
                    e[ax] = d;
                    let p = at(e, 0.0);
                    let q = at([-e[0], -e[1], -e[2]], 0.0);
                    for c in 0..3 {
                        lap[c] += (p[c] - 2.0 * m[c] + q[c]) / (d * d);
                        g2 += ((p[c] - q[c]) / (2.0 * d)).powi(2);
                    }
                }
                let p = at([0.0; 3], d);
                let q = at([0.0; 3], -d);
                let mt = [0, 1, 2].map(|c| (p[c] - q[c]) / (2.0 * d));
                let mxl = cross3(m, lap);
                let g = case.forcing_at(x, t);
                for c in 0..3 {
                    let expect = mt[c] - alpha * lap[c] - alpha * g2 * m[c] + mxl[c];
                    assert!((g[c] - expect).abs() < 1e-4 * (1.0 + expect.abs()), "dim {dim} comp {c}: {} vs {expect}", g[c]);
                }
            }
        }
    }

    #[test]
    fn rejects_2d() {
        assert!(ManufacturedCase::new(2, 1.0, 1.0).is_err());
    }
}
