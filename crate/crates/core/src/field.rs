use crate::error::{Error, Result};
use crate::mesh::{self, Mesh};

/// Three-component field sampled at cell centres, stored component-wise over
/// the padded (interior + ghost) layout of its mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    mesh: Mesh,
    data: [Vec<f64>; 3],
}

impl VectorField {
    pub fn zeros(mesh: Mesh) -> Self {
        let len = mesh.padded_len();
        Self { mesh, data: [vec![0.0; len], vec![0.0; len], vec![0.0; len]] }
    }

    pub fn uniform(mesh: Mesh, v: [f64; 3]) -> Self {
        let len = mesh.padded_len();
        Self { mesh, data: [vec![v[0]; len], vec![v[1]; len], vec![v[2]; len]] }
    }

    /// Samples `f` at every interior cell centre and fills the ghosts.
    pub fn from_fn(mesh: Mesh, mut f: impl FnMut([f64; 3]) -> [f64; 3]) -> Self {
        let mut out = Self::zeros(mesh);
        let [nx, ny, nz] = mesh.cells();
        let h = mesh.spacing();
        for l in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let x = [(i as f64 + 0.5) * h[0], (j as f64 + 0.5) * h[1], (l as f64 + 0.5) * h[2]];
                    let o = mesh.interior_offset(i, j, l);
                    let v = f(x);
                    for c in 0..3 {
                        out.data[c][o] = v[c];
                    }
                }
            }
        }
        out.fill_ghosts();
        out
    }

    /// Builds a field from interior values listed in x-fastest order.
    pub fn from_interior(mesh: Mesh, values: &[[f64; 3]]) -> Result<Self> {
        if values.len() != mesh.cell_count() {
            return Err(Error::config(format!(
                "expected {} cell values, got {}",
                mesh.cell_count(),
                values.len()
            )));
        }
        let mut out = Self::zeros(mesh);
        for (o, v) in mesh.interior_offsets().zip(values) {
            for c in 0..3 {
                out.data[c][o] = v[c];
            }
        }
        out.fill_ghosts();
        Ok(out)
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn components(&self) -> &[Vec<f64>; 3] {
        &self.data
    }

    pub fn components_mut(&mut self) -> &mut [Vec<f64>; 3] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, offset: usize) -> [f64; 3] {
        [self.data[0][offset], self.data[1][offset], self.data[2][offset]]
    }

    #[inline]
    pub fn put(&mut self, offset: usize, v: [f64; 3]) {
        self.data[0][offset] = v[0];
        self.data[1][offset] = v[1];
        self.data[2][offset] = v[2];
    }

    /// Value at an interior cell. Panics if out of range.
    pub fn get(&self, index: [usize; 3]) -> [f64; 3] {
        self.at(self.mesh.interior_offset(index[0], index[1], index[2]))
    }

    /// Sets an interior cell; ghosts are left stale.
    pub fn set(&mut self, index: [usize; 3], v: [f64; 3]) {
        let o = self.mesh.interior_offset(index[0], index[1], index[2]);
        self.put(o, v);
    }

    pub fn fill_ghosts(&mut self) {
        mesh::fill_ghosts(self);
    }

    /// Interior values in x-fastest order.
    pub fn interior(&self) -> Vec<[f64; 3]> {
        self.mesh.interior_offsets().map(|o| self.at(o)).collect()
    }

    /// Copies one component into an interior-only scalar field.
    pub fn component(&self, c: usize) -> ScalarField {
        let values = self.mesh.interior_offsets().map(|o| self.data[c][o]).collect();
        ScalarField { mesh: self.mesh, values }
    }

    /// Writes an interior-only scalar field into component `c` (ghosts stale).
    pub fn set_component(&mut self, c: usize, s: &ScalarField) -> Result<()> {
        if s.mesh != self.mesh {
            return Err(Error::MeshMismatch);
        }
        let mesh = self.mesh;
        for (o, &v) in mesh.interior_offsets().zip(&s.values) {
            self.data[c][o] = v;
        }
        Ok(())
    }

    pub fn check_mesh(&self, other: &VectorField) -> Result<()> {
        if self.mesh == other.mesh {
            Ok(())
        } else {
            Err(Error::MeshMismatch)
        }
    }

    /// Largest absolute interior entry over all components.
    pub fn max_abs(&self) -> f64 {
        self.mesh
            .interior_offsets()
            .flat_map(|o| self.at(o))
            .fold(0.0_f64, |acc, v| if v.is_nan() { f64::NAN } else { acc.max(v.abs()) })
    }

    pub fn is_finite(&self) -> bool {
        self.mesh.interior_offsets().all(|o| self.at(o).iter().all(|v| v.is_finite()))
    }

    /// `max | |m| - 1 |` over the interior.
    pub fn unit_deviation(&self) -> f64 {
        self.mesh
            .interior_offsets()
            .map(|o| {
                let v = self.at(o);
                ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Linear combination `sum_i w_i * f_i` over the full padded storage, so
    /// reflected ghosts stay consistent.
    pub fn combine(terms: &[(f64, &VectorField)]) -> Result<VectorField> {
        let (_, first) = terms.first().ok_or_else(|| Error::config("empty combination"))?;
        let mut out = VectorField::zeros(first.mesh);
        for (w, f) in terms {
            out.check_mesh(f)?;
            for c in 0..3 {
                for (o, v) in out.data[c].iter_mut().zip(&f.data[c]) {
                    *o += w * v;
                }
            }
        }
        Ok(out)
    }

    /// `self += w * other` over the full storage.
    pub fn add_scaled(&mut self, w: f64, other: &VectorField) -> Result<()> {
        self.check_mesh(other)?;
        for c in 0..3 {
            for (o, v) in self.data[c].iter_mut().zip(&other.data[c]) {
                *o += w * v;
            }
        }
        Ok(())
    }
}

/// Scalar values on interior cells only, x-fastest order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    mesh: Mesh,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(mesh: Mesh) -> Self {
        Self { mesh, values: vec![0.0; mesh.cell_count()] }
    }

    pub fn from_values(mesh: Mesh, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.cell_count() {
            return Err(Error::config(format!(
                "expected {} values, got {}",
                mesh.cell_count(),
                values.len()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn from_fn(mesh: Mesh, mut f: impl FnMut([f64; 3]) -> f64) -> Self {
        let [nx, ny, nz] = mesh.cells();
        let h = mesh.spacing();
        let mut values = Vec::with_capacity(mesh.cell_count());
        for l in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    values.push(f([(i as f64 + 0.5) * h[0], (j as f64 + 0.5) * h[1], (l as f64 + 0.5) * h[2]]));
                }
            }
        }
        Self { mesh, values }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}
