//! Cell-centred rectangular grids with two-deep reflective ghost layers.
//!
//! Interior cells are addressed 0-based, so cell `i` along an axis sits at
//! `(i + 1/2) h`. Axes with a single cell are inactive: they carry no ghost
//! layers and are never differenced.

use crate::error::{Error, Result};
use crate::field::VectorField;

/// Ghost layers on each side of every active axis.
pub const GHOST: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    cells: [usize; 3],
    spacing: [f64; 3],
}

impl Mesh {
    /// Grid covering `[0, extent[a]]` along each axis with `cells[a]` cells.
    pub fn new(cells: [usize; 3], extent: [f64; 3]) -> Result<Self> {
        let mut spacing = [0.0; 3];
        for a in 0..3 {
            if cells[a] == 0 {
                return Err(Error::config(format!("axis {a} has zero cells")));
            }
            if !(extent[a].is_finite() && extent[a] > 0.0) {
                return Err(Error::config(format!("axis {a} extent {} is not positive", extent[a])));
            }
            spacing[a] = extent[a] / cells[a] as f64;
        }
        Ok(Self { cells, spacing })
    }

    pub fn with_spacing(cells: [usize; 3], spacing: [f64; 3]) -> Result<Self> {
        let extent = [
            spacing[0] * cells[0] as f64,
            spacing[1] * cells[1] as f64,
            spacing[2] * cells[2] as f64,
        ];
        let mut mesh = Self::new(cells, extent)?;
        mesh.spacing = spacing;
        Ok(mesh)
    }

    /// `n` cells on the unit interval.
    pub fn unit_line(n: usize) -> Result<Self> {
        Self::new([n, 1, 1], [1.0; 3])
    }

    /// `n^3` cells on the unit cube.
    pub fn unit_cube(n: usize) -> Result<Self> {
        Self::new([n; 3], [1.0; 3])
    }

    pub fn cells(&self) -> [usize; 3] {
        self.cells
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn extent(&self) -> [f64; 3] {
        [
            self.spacing[0] * self.cells[0] as f64,
            self.spacing[1] * self.cells[1] as f64,
            self.spacing[2] * self.cells[2] as f64,
        ]
    }

    pub fn is_active(&self, axis: usize) -> bool {
        self.cells[axis] >= 2
    }

    /// Number of differenced axes.
    pub fn dim(&self) -> usize {
        (0..3).filter(|&a| self.is_active(a)).count()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    fn ghost(&self, axis: usize) -> usize {
        if self.is_active(axis) {
            GHOST
        } else {
            0
        }
    }

    /// Storage dimensions including ghost layers.
    pub fn padded(&self) -> [usize; 3] {
        [
            self.cells[0] + 2 * self.ghost(0),
            self.cells[1] + 2 * self.ghost(1),
            self.cells[2] + 2 * self.ghost(2),
        ]
    }

    pub fn padded_len(&self) -> usize {
        self.padded().iter().product()
    }

    /// Storage strides; x varies fastest.
    pub fn strides(&self) -> [usize; 3] {
        let p = self.padded();
        [1, p[0], p[0] * p[1]]
    }

    /// Storage offset of a cell given in interior coordinates; ghosts are
    /// reached with indices in `-2..0` and `n..n+2`.
    #[inline]
    pub fn offset(&self, i: isize, j: isize, l: isize) -> usize {
        let s = self.strides();
        let gi = i + self.ghost(0) as isize;
        let gj = j + self.ghost(1) as isize;
        let gl = l + self.ghost(2) as isize;
        debug_assert!(gi >= 0 && gj >= 0 && gl >= 0);
        gi as usize * s[0] + gj as usize * s[1] + gl as usize * s[2]
    }

    #[inline]
    pub fn interior_offset(&self, i: usize, j: usize, l: usize) -> usize {
        self.offset(i as isize, j as isize, l as isize)
    }

    /// Storage offsets of all interior cells in x-fastest order.
    pub fn interior_offsets(&self) -> impl Iterator<Item = usize> + '_ {
        let [nx, ny, nz] = self.cells;
        (0..nz).flat_map(move |l| {
            (0..ny).flat_map(move |j| {
                let base = self.interior_offset(0, j, l);
                base..base + nx
            })
        })
    }

    /// Position of the centre of an interior cell.
    pub fn cell_center(&self, index: [usize; 3]) -> Result<[f64; 3]> {
        if (0..3).any(|a| index[a] >= self.cells[a]) {
            return Err(Error::Index { index, cells: self.cells });
        }
        Ok([
            (index[0] as f64 + 0.5) * self.spacing[0],
            (index[1] as f64 + 0.5) * self.spacing[1],
            (index[2] as f64 + 0.5) * self.spacing[2],
        ])
    }

    /// Fails if `axis` has a single cell and so cannot be differenced.
    pub fn require_active(&self, axis: usize) -> Result<()> {
        if self.is_active(axis) {
            Ok(())
        } else {
            Err(Error::config(format!("axis {axis} has one cell and cannot be differenced")))
        }
    }
}

/// Populate the ghost layers of `field` by mirror reflection about each face.
///
/// Per active axis: `g(-1) = u(0)`, `g(-2) = u(1)`, `g(n) = u(n-1)`,
/// `g(n+1) = u(n-2)`. Axes are swept x, y, z in turn over the full padded
/// extent of the other axes, so edge and corner ghosts are reflections of
/// reflections.
pub fn fill_ghosts(field: &mut VectorField) {
    let mesh = *field.mesh();
    for comp in field.components_mut() {
        fill_scalar_ghosts(&mesh, comp);
    }
}

pub(crate) fn fill_scalar_ghosts(mesh: &Mesh, data: &mut [f64]) {
    let padded = mesh.padded();
    let strides = mesh.strides();
    for axis in 0..3 {
        if !mesh.is_active(axis) {
            continue;
        }
        let n = mesh.cells()[axis] as isize;
        let s = strides[axis] as isize;
        let (o1, o2) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for b in 0..padded[o2] {
            for a in 0..padded[o1] {
                // storage offset of interior index 0 along `axis`
                let base = (a * strides[o1] + b * strides[o2]) as isize + GHOST as isize * s;
                let at = |k: isize| (base + k * s) as usize;
                data[at(-1)] = data[at(0)];
                data[at(-2)] = data[at(1)];
                data[at(n)] = data[at(n - 1)];
                data[at(n + 1)] = data[at(n - 2)];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_centers() {
        let m = Mesh::unit_line(4).unwrap();
        assert_eq!(m.cell_center([0, 0, 0]).unwrap()[0], 1.0 / 8.0);
        assert_eq!(m.cell_center([3, 0, 0]).unwrap()[0], 7.0 / 8.0);
        assert!(matches!(m.cell_center([4, 0, 0]), Err(Error::Index { .. })));

        let m = Mesh::with_spacing([100, 1, 1], [4.8, 1.0, 1.0]).unwrap();
        // 1-based cell 50
        let x = m.cell_center([49, 0, 0]).unwrap()[0];
        assert!((x - 237.6).abs() < 1e-12);
    }

    #[test]
    fn spacing_is_extent_over_cells() {
        let m = Mesh::new([100, 100, 4], [480.0, 480.0, 20.0]).unwrap();
        assert_eq!(m.spacing(), [4.8, 4.8, 5.0]);
        assert_eq!(m.dim(), 3);
        assert_eq!(Mesh::unit_line(8).unwrap().dim(), 1);
        assert!(Mesh::new([0, 1, 1], [1.0; 3]).is_err());
        assert!(Mesh::unit_line(8).unwrap().require_active(1).is_err());
    }

    #[test]
    fn reflection_1d() {
        let mesh = Mesh::unit_line(4).unwrap();
        let mut f = VectorField::zeros(mesh);
        for (i, v) in [1.0, 2.0, 3.0, 4.0].into_iter().enumerate() {
            f.set([i, 0, 0], [v, 0.0, 0.0]);
        }
        fill_ghosts(&mut f);
        let x = &f.components()[0];
        let at = |i: isize| x[mesh.offset(i, 0, 0)];
        assert_eq!([at(-2), at(-1), at(4), at(5)], [2.0, 1.0, 4.0, 3.0]);
    }

    #[test]
    fn constant_field_ghosts() {
        let mesh = Mesh::new([3, 4, 2], [1.0; 3]).unwrap();
        let f = VectorField::uniform(mesh, [0.3, -0.4, 0.5]);
        for c in 0..3 {
            assert!(f.components()[c].iter().all(|&v| v == [0.3, -0.4, 0.5][c]));
        }
    }

    #[test]
    fn linear_field_has_zero_face_difference() {
        let mesh = Mesh::unit_line(8).unwrap();
        let f = VectorField::from_fn(mesh, |x| [x[0], 0.0, 0.0]);
        let u = &f.components()[0];
        let at = |i: isize| u[mesh.offset(i, 0, 0)];
        assert_eq!(at(-1) - at(0), 0.0);
        assert_eq!(at(8) - at(7), 0.0);
        assert_eq!(at(-2), at(1));
    }

    #[test]
    fn corners_are_double_reflections() {
        let mesh = Mesh::new([3, 3, 1], [1.0; 3]).unwrap();
        let f = VectorField::from_fn(mesh, |x| [x[0] + 10.0 * x[1], 0.0, 0.0]);
        let u = &f.components()[0];
        assert_eq!(u[mesh.offset(-1, -1, 0)], u[mesh.offset(0, 0, 0)]);
        assert_eq!(u[mesh.offset(-2, 4, 0)], u[mesh.offset(1, 1, 0)]);
    }
}
