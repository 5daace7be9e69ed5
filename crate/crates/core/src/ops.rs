//! Stencil and pointwise operations on cell-centred fields.
//!
//! Stencils read ghost cells, so callers fill ghosts first. Pointwise
//! operations act on the whole padded storage: reflection commutes with
//! pointwise maps, so ghosts of the output stay consistent.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::mesh::Mesh;

/// Spatial accuracy of a difference stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StencilOrder {
    /// `(1, -2, 1) / h^2`, centred gradient `(u[i+1] - u[i-1]) / 2h`.
    Second,
    /// `(-1/12, 4/3, -5/2, 4/3, -1/12) / h^2`, gradient `(-1, 8, 0, -8, 1) / 12h`.
    Fourth,
}

impl StencilOrder {
    pub fn order(self) -> usize {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }

    pub fn from_order(order: usize) -> Result<Self> {
        match order {
            2 => Ok(StencilOrder::Second),
            4 => Ok(StencilOrder::Fourth),
            other => Err(Error::config(format!("stencil order must be 2 or 4, got {other}"))),
        }
    }
}

impl fmt::Display for StencilOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order())
    }
}

impl FromStr for StencilOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: usize = s.trim().parse().map_err(|_| Error::config(format!("bad stencil order {s:?}")))?;
        Self::from_order(n)
    }
}

/// Dimensionless material and field parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    /// Exchange coefficient.
    pub epsilon: f64,
    /// Uniaxial anisotropy, easy axis e1.
    pub q: f64,
    /// Damping.
    pub alpha: f64,
    /// External field.
    pub h_e: [f64; 3],
}

impl PhysicsParams {
    pub fn new(epsilon: f64, q: f64, alpha: f64, h_e: [f64; 3]) -> Result<Self> {
        let p = Self { epsilon, q, alpha, h_e };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::config(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !self.q.is_finite() || self.h_e.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("q and h_e must be finite"));
        }
        Ok(())
    }
}

#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Active axes as `(storage stride, 1/h)`.
fn active_axes(mesh: &Mesh) -> Vec<(isize, f64)> {
    let s = mesh.strides();
    let h = mesh.spacing();
    (0..3).filter(|&a| mesh.is_active(a)).map(|a| (s[a] as isize, 1.0 / h[a])).collect()
}

/// Applies the discrete Laplacian to one padded scalar array, writing the
/// interior of `out`. Ghosts of `u` must be filled.
pub fn laplacian_scalar(mesh: &Mesh, u: &[f64], out: &mut [f64], order: StencilOrder) {
    let [nx, ny, nz] = mesh.cells();
    let axes: Vec<(isize, f64)> = active_axes(mesh).into_iter().map(|(s, ih)| (s, ih * ih)).collect();
    for l in 0..nz {
        for j in 0..ny {
            let base = mesh.interior_offset(0, j, l);
            for o in base..base + nx {
                let c = u[o];
                let mut acc = 0.0;
                for &(s, w) in &axes {
                    let o = o as isize;
                    let p1 = u[(o + s) as usize];
                    let m1 = u[(o - s) as usize];
                    acc += w * match order {
                        StencilOrder::Second => p1 - 2.0 * c + m1,
                        StencilOrder::Fourth => {
                            let p2 = u[(o + 2 * s) as usize];
                            let m2 = u[(o - 2 * s) as usize];
                            -(p2 + m2) / 12.0 + 4.0 / 3.0 * (p1 + m1) - 2.5 * c
                        }
                    };
                }
                out[o] = acc;
            }
        }
    }
}

/// Discrete Laplacian of each component. Output ghosts are left zero.
pub fn laplacian(m: &VectorField, order: StencilOrder) -> VectorField {
    let mesh = *m.mesh();
    let mut out = VectorField::zeros(mesh);
    for c in 0..3 {
        laplacian_scalar(&mesh, &m.components()[c], &mut out.components_mut()[c], order);
    }
    out
}

pub fn laplacian2(m: &VectorField) -> VectorField {
    laplacian(m, StencilOrder::Second)
}

pub fn laplacian4(m: &VectorField) -> VectorField {
    laplacian(m, StencilOrder::Fourth)
}

/// Centred-difference gradient, `[cell][axis][component]`, interior cells in
/// x-fastest order. Inactive axes give zero rows.
pub fn gradient_with(m: &VectorField, order: StencilOrder) -> Vec<[[f64; 3]; 3]> {
    let mesh = *m.mesh();
    let axes: Vec<(usize, isize, f64)> = {
        let s = mesh.strides();
        let h = mesh.spacing();
        (0..3).filter(|&a| mesh.is_active(a)).map(|a| (a, s[a] as isize, 1.0 / h[a])).collect()
    };
    let comps = m.components();
    mesh.interior_offsets()
        .map(|o| {
            let o = o as isize;
            let mut g = [[0.0; 3]; 3];
            for &(a, s, ih) in &axes {
                for c in 0..3 {
                    let u = &comps[c];
                    let d1 = u[(o + s) as usize] - u[(o - s) as usize];
                    g[a][c] = match order {
                        StencilOrder::Second => 0.5 * d1 * ih,
                        StencilOrder::Fourth => {
                            let d2 = u[(o + 2 * s) as usize] - u[(o - 2 * s) as usize];
                            (8.0 * d1 - d2) * ih / 12.0
                        }
                    };
                }
            }
            g
        })
        .collect()
}

pub fn gradient(m: &VectorField) -> Vec<[[f64; 3]; 3]> {
    gradient_with(m, StencilOrder::Second)
}

/// Pointwise sum of squares of all gradient entries.
pub fn grad_norm_sq_with(m: &VectorField, order: StencilOrder) -> ScalarField {
    let values = gradient_with(m, order)
        .into_iter()
        .map(|g| g.iter().flatten().map(|v| v * v).sum())
        .collect();
    ScalarField::from_values(*m.mesh(), values).expect("one value per cell")
}

pub fn grad_norm_sq(m: &VectorField) -> ScalarField {
    grad_norm_sq_with(m, StencilOrder::Second)
}

fn zip_map(a: &VectorField, b: &VectorField, f: impl Fn([f64; 3], [f64; 3]) -> [f64; 3]) -> Result<VectorField> {
    a.check_mesh(b)?;
    let mut out = VectorField::zeros(*a.mesh());
    for o in 0..a.mesh().padded_len() {
        out.put(o, f(a.at(o), b.at(o)));
    }
    Ok(out)
}

/// Pointwise `a x b`.
pub fn cross(a: &VectorField, b: &VectorField) -> Result<VectorField> {
    zip_map(a, b, cross3)
}

/// Pointwise `a . b` on interior cells.
pub fn dot(a: &VectorField, b: &VectorField) -> Result<ScalarField> {
    a.check_mesh(b)?;
    let values = a.mesh().interior_offsets().map(|o| dot3(a.at(o), b.at(o))).collect();
    ScalarField::from_values(*a.mesh(), values)
}

/// Smallest norm accepted by [`project`].
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Normalises every interior cell to unit length, then refills ghosts.
pub fn project(m: &mut VectorField) -> Result<()> {
    let mesh = *m.mesh();
    for (cell, o) in mesh.interior_offsets().enumerate() {
        let v = m.at(o);
        let norm = dot3(v, v).sqrt();
        if !(norm >= DEGENERATE_NORM) || !norm.is_finite() {
            return Err(Error::Degenerate { cell, norm });
        }
        m.put(o, [v[0] / norm, v[1] / norm, v[2] / norm]);
    }
    m.fill_ghosts();
    Ok(())
}

/// Second-order extrapolation `2 m1 - m0`.
pub fn predictor2(m1: &VectorField, m0: &VectorField) -> Result<VectorField> {
    VectorField::combine(&[(2.0, m1), (-1.0, m0)])
}

/// Third-order extrapolation `3 m2 - 3 m1 + m0`.
pub fn predictor3(m2: &VectorField, m1: &VectorField, m0: &VectorField) -> Result<VectorField> {
    VectorField::combine(&[(3.0, m2), (-3.0, m1), (1.0, m0)])
}

/// Source term `f = -q (m2 e2 + m3 e3) + h_s + h_e`.
pub fn assemble_f(m: &VectorField, h_s: &VectorField, params: &PhysicsParams) -> Result<VectorField> {
    let q = params.q;
    let he = params.h_e;
    zip_map(m, h_s, |v, hs| [hs[0] + he[0], -q * v[1] + hs[1] + he[1], -q * v[2] + hs[2] + he[2]])
}

/// Discrete error norms between two fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub linf: f64,
    pub l2: f64,
    /// `sqrt(l2^2 + grad^2)`.
    pub h1: f64,
    /// `H1` seminorm, the `L2` norm of the discrete gradient.
    pub grad: f64,
}

/// `L-inf` (componentwise max), cell-volume weighted `L2`, and `H1` with the
/// second-order centred gradient, over interior cells only.
pub fn error_norms(a: &VectorField, b: &VectorField) -> Result<ErrorNorms> {
    let mut diff = VectorField::combine(&[(1.0, a), (-1.0, b)])?;
    diff.fill_ghosts();
    let mesh = *a.mesh();
    let vol = mesh.cell_volume();
    let mut linf = 0.0_f64;
    let mut sum2 = 0.0;
    for o in mesh.interior_offsets() {
        let d = diff.at(o);
        for v in d {
            linf = linf.max(v.abs());
        }
        sum2 += dot3(d, d);
    }
    let grad2: f64 = grad_norm_sq(&diff).values().iter().sum();
    let l2sq = sum2 * vol;
    Ok(ErrorNorms { linf, l2: l2sq.sqrt(), h1: (l2sq + grad2 * vol).sqrt(), grad: (grad2 * vol).sqrt() })
}

/// Dimensionless micromagnetic energy: exchange, anisotropy, Zeeman and
/// stray-field self-energy, summed over cells times the cell volume.
///
/// `m` must have ghosts filled.
pub fn energy(m: &VectorField, h_s: &VectorField, params: &PhysicsParams) -> Result<f64> {
    m.check_mesh(h_s)?;
    let mesh = *m.mesh();
    let g2 = grad_norm_sq(m);
    let mut e = 0.0;
    for (o, g) in mesh.interior_offsets().zip(g2.values()) {
        let v = m.at(o);
        let hs = h_s.at(o);
        e += 0.5 * params.epsilon * g + 0.5 * params.q * (v[1] * v[1] + v[2] * v[2])
            - dot3(params.h_e, v)
            - 0.5 * dot3(hs, v);
    }
    Ok(e * mesh.cell_volume())
}
