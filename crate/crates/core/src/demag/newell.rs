//! Cell-averaged demagnetization tensor between two uniformly magnetized
//! rectangular prisms (Newell, Williams & Dunlop, 1993).
//!
//! Returned components follow the positive convention (self tensor of a
//! cube is `diag(1/3, 1/3, 1/3)`); the stray field is `h = -N m`.

use std::f64::consts::PI;

/// Offsets farther than this many cell diagonals use the point-dipole limit;
/// the prism formulas lose roughly `eps * r^6` relative accuracy to cancellation.
pub const FAR_FIELD_DIAGONALS: f64 = 24.0;

#[inline]
fn asinh_ratio(num: f64, den_sq: f64) -> f64 {
    if den_sq == 0.0 {
        0.0
    } else {
        (num / den_sq.sqrt()).asinh()
    }
}

#[inline]
fn atan_ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        (num / den).atan()
    }
}

/// Newell's `f`, whose sixfold difference gives `N_xx`.
fn newell_f(x: f64, y: f64, z: f64) -> f64 {
    let (x2, y2, z2) = (x * x, y * y, z * z);
    let r = (x2 + y2 + z2).sqrt();
    let mut v = (2.0 * x2 - y2 - z2) * r / 6.0;
    if y != 0.0 {
        v += 0.5 * y * (z2 - x2) * asinh_ratio(y, x2 + z2);
    }
    if z != 0.0 {
        v += 0.5 * z * (y2 - x2) * asinh_ratio(z, x2 + y2);
    }
    if x != 0.0 && y != 0.0 && z != 0.0 {
        v -= x * y * z * atan_ratio(y * z, x * r);
    }
    v
}

/// Newell's `g`, whose sixfold difference gives `N_xy`.
fn newell_g(x: f64, y: f64, z: f64) -> f64 {
    let (x2, y2, z2) = (x * x, y * y, z * z);
    let r = (x2 + y2 + z2).sqrt();
    let mut v = -x * y * r / 3.0;
    if x != 0.0 && y != 0.0 && z != 0.0 {
        v += x * y * z * asinh_ratio(z, x2 + y2);
    }
    if y != 0.0 {
        v += y / 6.0 * (3.0 * z2 - y2) * asinh_ratio(x, y2 + z2);
    }
    if x != 0.0 {
        v += x / 6.0 * (3.0 * z2 - x2) * asinh_ratio(y, x2 + z2);
    }
    if z != 0.0 {
        v -= z2 * z / 6.0 * atan_ratio(x * y, z * r);
        if y != 0.0 {
            v -= 0.5 * z * y2 * atan_ratio(x * z, y * r);
        }
        if x != 0.0 {
            v -= 0.5 * z * x2 * atan_ratio(y * z, x * r);
        }
    }
    v
}

/// Weighted 27-point difference `sum w_a w_b w_c F(X + a dx, ...)` with
/// weights `(-1, 2, -1)` per axis.
fn sixfold(func: fn(f64, f64, f64) -> f64, r: [f64; 3], d: [f64; 3]) -> f64 {
    const W: [f64; 3] = [-1.0, 2.0, -1.0];
    let mut acc = 0.0;
    for (a, wa) in W.iter().enumerate() {
        let x = r[0] + (a as f64 - 1.0) * d[0];
        for (b, wb) in W.iter().enumerate() {
            let y = r[1] + (b as f64 - 1.0) * d[1];
            for (c, wc) in W.iter().enumerate() {
                let z = r[2] + (c as f64 - 1.0) * d[2];
                acc += wa * wb * wc * func(x, y, z);
            }
        }
    }
    acc
}

fn nxx(r: [f64; 3], d: [f64; 3]) -> f64 {
    sixfold(newell_f, r, d) / (4.0 * PI * d[0] * d[1] * d[2])
}

fn nxy(r: [f64; 3], d: [f64; 3]) -> f64 {
    sixfold(newell_g, r, d) / (4.0 * PI * d[0] * d[1] * d[2])
}

/// Point-dipole tensor for distant cells.
fn dipole(r: [f64; 3], d: [f64; 3]) -> [f64; 6] {
    let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    let rr = r2.sqrt();
    let pre = d[0] * d[1] * d[2] / (4.0 * PI * r2 * rr);
    let t = |i: usize, j: usize| {
        let delta = if i == j { 1.0 } else { 0.0 };
        pre * (delta - 3.0 * r[i] * r[j] / r2)
    };
    [t(0, 0), t(0, 1), t(0, 2), t(1, 1), t(1, 2), t(2, 2)]
}

/// Demag tensor `(xx, xy, xz, yy, yz, zz)` at integer cell offset `offset`
/// for cells of size `cell` (any consistent length unit).
pub fn demag_tensor(offset: [i64; 3], cell: [f64; 3]) -> [f64; 6] {
    // the tensor is scale invariant; normalise to keep the prism sums well conditioned
    let scale = cell.iter().cloned().fold(0.0, f64::max);
    let d = cell.map(|c| c / scale);
    let r = [offset[0] as f64 * d[0], offset[1] as f64 * d[1], offset[2] as f64 * d[2]];
    let diag = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    let dist = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if dist > FAR_FIELD_DIAGONALS * diag {
        return dipole(r, d);
    }
    let perm = |p: [usize; 3], v: [f64; 3]| [v[p[0]], v[p[1]], v[p[2]]];
    let xx = nxx(r, d);
    let yy = nxx(perm([1, 0, 2], r), perm([1, 0, 2], d));
    let zz = nxx(perm([2, 1, 0], r), perm([2, 1, 0], d));
    let xy = nxy(r, d);
    let xz = nxy(perm([0, 2, 1], r), perm([0, 2, 1], d));
    let yz = nxy(perm([1, 2, 0], r), perm([1, 2, 0], d));
    [xx, xy, xz, yy, yz, zz]
}

/// Near-field tensor without the far-field switch, for cross-checks.
pub fn prism_tensor(offset: [i64; 3], cell: [f64; 3]) -> [f64; 6] {
    let scale = cell.iter().cloned().fold(0.0, f64::max);
    let d = cell.map(|c| c / scale);
    let r = [offset[0] as f64 * d[0], offset[1] as f64 * d[1], offset[2] as f64 * d[2]];
    let perm = |p: [usize; 3], v: [f64; 3]| [v[p[0]], v[p[1]], v[p[2]]];
    [
        nxx(r, d),
        nxy(r, d),
        nxy(perm([0, 2, 1], r), perm([0, 2, 1], d)),
        nxx(perm([1, 0, 2], r), perm([1, 0, 2], d)),
        nxy(perm([1, 2, 0], r), perm([1, 2, 0], d)),
        nxx(perm([2, 1, 0], r), perm([2, 1, 0], d)),
    ]
}

/// Point-dipole limit of the tensor at the same offset.
pub fn dipole_tensor(offset: [i64; 3], cell: [f64; 3]) -> [f64; 6] {
    let scale = cell.iter().cloned().fold(0.0, f64::max);
    let d = cell.map(|c| c / scale);
    dipole([offset[0] as f64 * d[0], offset[1] as f64 * d[1], offset[2] as f64 * d[2]], d)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Aharoni's closed form for the magnetometric demag factor of a prism
    /// `2a x 2b x 2c` along the `c` edge.
    fn aharoni_nzz(a: f64, b: f64, c: f64) -> f64 {
        let r = (a * a + b * b + c * c).sqrt();
        let ab = (a * a + b * b).sqrt();
        let bc = (b * b + c * c).sqrt();
        let ac = (a * a + c * c).sqrt();
        let t = (b * b - c * c) / (2.0 * b * c) * ((r - a) / (r + a)).ln()
            + (a * a - c * c) / (2.0 * a * c) * ((r - b) / (r + b)).ln()
            + b / (2.0 * c) * ((ab + a) / (ab - a)).ln()
            + a / (2.0 * c) * ((ab + b) / (ab - b)).ln()
            + c / (2.0 * a) * ((bc - b) / (bc + b)).ln()
            + c / (2.0 * b) * ((ac - a) / (ac + a)).ln()
            + 2.0 * (a * b / (c * r)).atan()
            + (a * a * a + b * b * b - 2.0 * c * c * c) / (3.0 * a * b * c)
            + (a * a + b * b - 2.0 * c * c) / (3.0 * a * b * c) * r
            + c / (a * b) * (ac + bc)
            - (ab.powi(3) + bc.powi(3) + ac.powi(3)) / (3.0 * a * b * c);
        t / PI
    }

    #[test]
    fn cube_self_tensor() {
        let n = demag_tensor([0, 0, 0], [1.0, 1.0, 1.0]);
        for v in [n[0], n[3], n[5]] {
            assert!((v - 1.0 / 3.0).abs() < 1e-12, "{v}");
        }
        for v in [n[1], n[2], n[4]] {
            assert!(v.abs() < 1e-14);
        }
    }

    #[test]
    fn prism_self_tensor_matches_closed_form() {
        for cell in [[4.8, 4.8, 5.0], [6.25, 1.5625, 1.0], [1.0, 2.0, 3.0], [3.0, 1.0, 0.2]] {
            let n = demag_tensor([0, 0, 0], cell);
            let (a, b, c) = (cell[0] / 2.0, cell[1] / 2.0, cell[2] / 2.0);
            let zz = aharoni_nzz(a, b, c);
            let xx = aharoni_nzz(b, c, a);
            let yy = aharoni_nzz(c, a, b);
            assert!((n[5] - zz).abs() < 1e-10, "{cell:?}: {} vs {zz}", n[5]);
            assert!((n[0] - xx).abs() < 1e-10, "{cell:?}");
            assert!((n[3] - yy).abs() < 1e-10, "{cell:?}");
            assert!((n[0] + n[3] + n[5] - 1.0).abs() < 1e-10);
            assert!(n[1].abs() < 1e-12 && n[2].abs() < 1e-12 && n[4].abs() < 1e-12);
        }
    }

    #[test]
    fn trace_vanishes_away_from_self() {
        let cell = [4.8, 4.8, 5.0];
        for off in [[1, 0, 0], [0, 1, 1], [3, -2, 1], [10, 7, 3], [23, 1, 0], [60, 40, 3]] {
            let n = demag_tensor(off, cell);
            assert!((n[0] + n[3] + n[5]).abs() < 1e-6, "{off:?}");
        }
    }

    #[test]
    fn far_field_matches_dipole_and_decays_cubically() {
        let cell = [1.0, 1.0, 1.0];
        for off in [[20, 0, 0], [12, 9, 5]] {
            let p = prism_tensor(off, cell);
            let d = dipole_tensor(off, cell);
            let scale = d.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
            for (a, b) in p.iter().zip(&d) {
                assert!((a - b).abs() < 1e-3 * scale, "{off:?}: {a} vs {b}");
            }
        }
        let near = demag_tensor([8, 0, 0], [2.0, 1.0, 1.0]);
        let far = demag_tensor([16, 0, 0], [2.0, 1.0, 1.0]);
        let ratio = near[0] / far[0];
        assert!((ratio - 8.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn switch_between_prism_and_dipole_is_smooth() {
        let cell = [4.8, 4.8, 5.0];
        let diag = (4.8f64 * 4.8 * 2.0 + 25.0).sqrt() / 5.0;
        let r = (FAR_FIELD_DIAGONALS * diag).ceil() as i64;
        let p = prism_tensor([r, 0, 0], cell);
        let d = dipole_tensor([r, 0, 0], cell);
        assert!((p[0] - d[0]).abs() < 1e-4 * d[0].abs());
    }

    #[test]
    fn off_diagonal_symmetries() {
        let cell = [1.0, 1.5, 0.7];
        let a = demag_tensor([2, 3, 1], cell);
        let b = demag_tensor([-2, 3, 1], cell);
        let c = demag_tensor([-2, -3, -1], cell);
        assert!((a[1] + b[1]).abs() < 1e-13); // xy odd in x
        assert!((a[0] - b[0]).abs() < 1e-13);
        for k in 0..6 {
            assert!((a[k] - c[k]).abs() < 1e-13); // point reflection
        }
    }
}
