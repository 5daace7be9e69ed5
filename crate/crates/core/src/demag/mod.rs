//! Stray field by zero-padded FFT convolution with the cell-averaged
//! demagnetization tensor.
//!
//! Each axis with `n > 1` cells is embedded in a circular grid of `2n`
//! points; offsets `-(n-1)..=(n-1)` are stored and the wrap-around slot at
//! `n` stays zero, so no periodic images enter the result.

mod newell;

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub use newell::{demag_tensor, dipole_tensor, prism_tensor, FAR_FIELD_DIAGONALS};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::mesh::Mesh;

/// Tensor component order used throughout: `xx, xy, xz, yy, yz, zz`.
pub const COMPONENTS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Index into the 6-component tensor for a `(row, col)` pair.
#[inline]
pub fn tensor_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    }
}

#[derive(Clone)]
struct Fft3 {
    dims: [usize; 3],
    forward: [Arc<dyn Fft<f64>>; 3],
    inverse: [Arc<dyn Fft<f64>>; 3],
}

impl Fft3 {
    fn new(dims: [usize; 3]) -> Self {
        let mut planner = FftPlanner::new();
        let forward = dims.map(|n| planner.plan_fft_forward(n));
        let inverse = dims.map(|n| planner.plan_fft_inverse(n));
        Self { dims, forward, inverse }
    }

    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn scratch_len(&self) -> usize {
        (0..3)
            .map(|a| self.forward[a].get_inplace_scratch_len().max(self.inverse[a].get_inplace_scratch_len()))
            .max()
            .unwrap_or(0)
    }

    /// Transforms along `axis` for lines whose other coordinates lie below
    /// `limit` (lines outside are known to be zero or are not needed).
    fn axis_pass(&self, buf: &mut [Complex64], axis: usize, limit: [usize; 3], forward: bool, scratch: &mut [Complex64]) {
        let n = self.dims[axis];
        if n == 1 {
            return;
        }
        let d = self.dims;
        let strides = [1, d[0], d[0] * d[1]];
        let fft = if forward { &self.forward[axis] } else { &self.inverse[axis] };
        if axis == 0 {
            for c in 0..limit[2] {
                for b in 0..limit[1] {
                    let base = b * strides[1] + c * strides[2];
                    fft.process_with_scratch(&mut buf[base..base + n], scratch);
                }
            }
            return;
        }
        // Lines along y or z: gather a plane of them (x innermost for
        // contiguous reads), batch-transform, scatter back.
        let o2 = if axis == 1 { 2 } else { 1 };
        let width = limit[0];
        let s = strides[axis];
        let mut block = vec![Complex64::default(); width * n];
        for b in 0..limit[o2] {
            let base = b * strides[o2];
            for k in 0..n {
                let row = &buf[base + k * s..base + k * s + width];
                for (a, v) in row.iter().enumerate() {
                    block[a * n + k] = *v;
                }
            }
            fft.process_with_scratch(&mut block, scratch);
            for k in 0..n {
                let row = &mut buf[base + k * s..base + k * s + width];
                for (a, v) in row.iter_mut().enumerate() {
                    *v = block[a * n + k];
                }
            }
        }
    }

    /// Forward transform of data supported on `[0, support)`.
    fn forward_pruned(&self, buf: &mut [Complex64], support: [usize; 3], scratch: &mut [Complex64]) {
        let d = self.dims;
        self.axis_pass(buf, 0, [d[0], support[1], support[2]], true, scratch);
        self.axis_pass(buf, 1, [d[0], d[1], support[2]], true, scratch);
        self.axis_pass(buf, 2, d, true, scratch);
    }

    /// Unnormalised inverse transform, exact only on `[0, needed)`.
    fn inverse_pruned(&self, buf: &mut [Complex64], needed: [usize; 3], scratch: &mut [Complex64]) {
        let d = self.dims;
        self.axis_pass(buf, 2, d, false, scratch);
        self.axis_pass(buf, 1, [d[0], d[1], needed[2]], false, scratch);
        self.axis_pass(buf, 0, [d[0], needed[1], needed[2]], false, scratch);
    }
}

/// Padded transform buffers reused across stray-field evaluations.
pub struct DemagWorkspace {
    zxy: Vec<Complex64>,
    zz: Vec<Complex64>,
    hxy: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

/// Precomputed spectra of the stray-field kernel `K = -N` on one mesh.
#[derive(Clone)]
pub struct DemagKernel {
    mesh: Mesh,
    padded: [usize; 3],
    fft: Fft3,
    /// Real spectra of the six kernel components, already divided by the
    /// transform length.
    spectra: [Vec<f64>; 6],
}

impl std::fmt::Debug for DemagKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DemagKernel").field("mesh", &self.mesh).field("padded", &self.padded).finish()
    }
}

/// Largest imaginary part tolerated in a kernel spectrum, relative to its scale.
const SPECTRUM_IMAG_TOL: f64 = 1e-9;

impl DemagKernel {
    pub fn build(mesh: Mesh) -> Result<Self> {
        let cells = mesh.cells();
        let cell = mesh.spacing();
        let padded = cells.map(|n| if n > 1 { 2 * n } else { 1 });
        let len: usize = padded.iter().product();
        let strides = [1, padded[0], padded[0] * padded[1]];

        // self-check: the tensor trace is 1 at the self cell
        let self_tensor = demag_tensor([0, 0, 0], cell);
        let trace = self_tensor[0] + self_tensor[3] + self_tensor[5];
        if !trace.is_finite() || (trace - 1.0).abs() > 1e-6 {
            return Err(Error::Kernel(format!("self-tensor trace {trace} differs from 1 for cell {cell:?}")));
        }

        let mut real: [Vec<Complex64>; 6] = std::array::from_fn(|_| vec![Complex64::default(); len]);
        // one octant, mirrored with the parity of each component
        for z in 0..cells[2] as i64 {
            for y in 0..cells[1] as i64 {
                for x in 0..cells[0] as i64 {
                    let n = demag_tensor([x, y, z], cell);
                    if n.iter().any(|v| !v.is_finite()) {
                        return Err(Error::Kernel(format!("non-finite tensor at offset ({x}, {y}, {z})")));
                    }
                    for sz in [1i64, -1] {
                        if z == 0 && sz < 0 {
                            continue;
                        }
                        for sy in [1i64, -1] {
                            if y == 0 && sy < 0 {
                                continue;
                            }
                            for sx in [1i64, -1] {
                                if x == 0 && sx < 0 {
                                    continue;
                                }
                                let wrap = |v: i64, p: usize| v.rem_euclid(p as i64) as usize;
                                let idx = wrap(sx * x, padded[0]) * strides[0]
                                    + wrap(sy * y, padded[1]) * strides[1]
                                    + wrap(sz * z, padded[2]) * strides[2];
                                let sign = [1.0, sx as f64 * sy as f64, sx as f64 * sz as f64, 1.0, sy as f64 * sz as f64, 1.0];
                                for k in 0..6 {
                                    real[k][idx] = Complex64::new(-sign[k] * n[k], 0.0);
                                }
                            }
                        }
                    }
                }
            }
        }

        let fft = Fft3::new(padded);
        let mut scratch = vec![Complex64::default(); fft.scratch_len()];
        let norm = 1.0 / len as f64;
        let mut spectra: [Vec<f64>; 6] = std::array::from_fn(|_| Vec::new());
        for comp in real.iter_mut() {
            fft.forward_pruned(comp, padded, &mut scratch);
        }
        let scale = real.iter().flatten().fold(0.0_f64, |a, c| a.max(c.re.abs()));
        for k in 0..6 {
            let imag = real[k].iter().fold(0.0_f64, |a, c| a.max(c.im.abs()));
            if imag > SPECTRUM_IMAG_TOL * scale {
                return Err(Error::Kernel(format!("kernel spectrum {k} not real (imag/scale = {:e})", imag / scale)));
            }
            spectra[k] = real[k].iter().map(|c| c.re * norm).collect();
        }
        Ok(Self { mesh, padded, fft, spectra })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn padded_dims(&self) -> [usize; 3] {
        self.padded
    }

    /// Real-space kernel `K = -N` at a cell offset.
    pub fn kernel_at(&self, offset: [i64; 3]) -> [f64; 6] {
        demag_tensor(offset, self.mesh.spacing()).map(|v| -v)
    }

    /// Buffers for [`apply_with`](Self::apply_with).
    pub fn workspace(&self) -> DemagWorkspace {
        let len = self.fft.len();
        DemagWorkspace {
            zxy: vec![Complex64::default(); len],
            zz: vec![Complex64::default(); len],
            hxy: vec![Complex64::default(); len],
            scratch: vec![Complex64::default(); self.fft.scratch_len()],
        }
    }

    /// Stray field of `m`; ghosts of the result are filled by reflection.
    pub fn apply(&self, m: &VectorField) -> Result<VectorField> {
        self.apply_with(m, &mut self.workspace())
    }

    /// As [`apply`](Self::apply), reusing caller-owned buffers.
    pub fn apply_with(&self, m: &VectorField, ws: &mut DemagWorkspace) -> Result<VectorField> {
        if *m.mesh() != self.mesh {
            return Err(Error::MeshMismatch);
        }
        if ws.zxy.len() != self.fft.len() {
            *ws = self.workspace();
        }
        let cells = self.mesh.cells();
        let p = self.padded;
        let pstride = [1, p[0], p[0] * p[1]];
        let DemagWorkspace { zxy, zz, hxy, scratch } = ws;
        zxy.fill(Complex64::default());
        zz.fill(Complex64::default());
        let comps = m.components();
        for l in 0..cells[2] {
            for j in 0..cells[1] {
                let src = self.mesh.interior_offset(0, j, l);
                let dst = j * pstride[1] + l * pstride[2];
                for i in 0..cells[0] {
                    zxy[dst + i] = Complex64::new(comps[0][src + i], comps[1][src + i]);
                    zz[dst + i] = Complex64::new(comps[2][src + i], 0.0);
                }
            }
        }
        self.fft.forward_pruned(zxy, cells, scratch);
        self.fft.forward_pruned(zz, cells, scratch);

        let [kxx, kxy, kxz, kyy, kyz, kzz] = &self.spectra;
        let neg = |k: usize, n: usize| if k == 0 { 0 } else { n - k };
        for c in 0..p[2] {
            let nc = neg(c, p[2]);
            for b in 0..p[1] {
                let nb = neg(b, p[1]);
                for a in 0..p[0] {
                    let idx = a + b * pstride[1] + c * pstride[2];
                    let nidx = neg(a, p[0]) + nb * pstride[1] + nc * pstride[2];
                    let z = zxy[idx];
                    let zc = zxy[nidx].conj();
                    let mx = (z + zc) * 0.5;
                    let my = (z - zc) * Complex64::new(0.0, -0.5);
                    let mz = zz[idx];
                    let hx = mx * kxx[idx] + my * kxy[idx] + mz * kxz[idx];
                    let hy = mx * kxy[idx] + my * kyy[idx] + mz * kyz[idx];
                    let hz = mx * kxz[idx] + my * kyz[idx] + mz * kzz[idx];
                    hxy[idx] = hx + Complex64::new(0.0, 1.0) * hy;
                    zz[idx] = hz;
                }
            }
        }
        self.fft.inverse_pruned(hxy, cells, scratch);
        self.fft.inverse_pruned(zz, cells, scratch);

        let mut out = VectorField::zeros(self.mesh);
        {
            let oc = out.components_mut();
            for l in 0..cells[2] {
                for j in 0..cells[1] {
                    let dst = self.mesh.interior_offset(0, j, l);
                    let src = j * pstride[1] + l * pstride[2];
                    for i in 0..cells[0] {
                        oc[0][dst + i] = hxy[src + i].re;
                        oc[1][dst + i] = hxy[src + i].im;
                        oc[2][dst + i] = zz[src + i].re;
                    }
                }
            }
        }
        out.fill_ghosts();
        Ok(out)
    }
}

/// Direct `O(N^2)` evaluation of the stray field, for verification.
pub fn apply_direct(mesh: &Mesh, m: &VectorField) -> Result<VectorField> {
    if m.mesh() != mesh {
        return Err(Error::MeshMismatch);
    }
    let [nx, ny, nz] = mesh.cells();
    let cell = mesh.spacing();
    let mut out = VectorField::zeros(*mesh);
    let idx = |i: usize, j: usize, l: usize| [i as i64, j as i64, l as i64];
    for l in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let mut h = [0.0; 3];
                for l2 in 0..nz {
                    for j2 in 0..ny {
                        for i2 in 0..nx {
                            let a = idx(i, j, l);
                            let b = idx(i2, j2, l2);
                            let n = demag_tensor([a[0] - b[0], a[1] - b[1], a[2] - b[2]], cell);
                            let v = m.get([i2, j2, l2]);
                            for (r, hr) in h.iter_mut().enumerate() {
                                for (c, vc) in v.iter().enumerate() {
                                    *hr -= n[tensor_index(r, c)] * vc;
                                }
                            }
                        }
                    }
                }
                out.set([i, j, l], h);
            }
        }
    }
    out.fill_ghosts();
    Ok(out)
}
