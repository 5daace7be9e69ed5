#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Cell-centred mirror index for a ghost at `i` on `n` cells.
pub fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let mut i = i;
    loop {
        if i < 0 {
            i = -1 - i;
        } else if i >= n {
            i = 2 * n - 1 - i;
        } else {
            return i as usize;
        }
    }
}

pub fn second_weights() -> Vec<(isize, f64)> {
    vec![(-1, 1.0), (0, -2.0), (1, 1.0)]
}

pub fn fourth_weights() -> Vec<(isize, f64)> {
    vec![(-2, -1.0 / 12.0), (-1, 4.0 / 3.0), (0, -2.5), (1, 4.0 / 3.0), (2, -1.0 / 12.0)]
}

/// Dense Neumann Laplacian on an x-fastest grid, built from the stencil
/// weights and mirror ghosts.
pub fn dense_laplacian(cells: [usize; 3], h: [f64; 3], weights: &[(isize, f64)]) -> Vec<Vec<f64>> {
    let n = cells.iter().product::<usize>();
    let idx = |i: usize, j: usize, l: usize| i + cells[0] * (j + cells[1] * l);
    let mut a = vec![vec![0.0; n]; n];
    for l in 0..cells[2] {
        for j in 0..cells[1] {
            for i in 0..cells[0] {
                let row = idx(i, j, l);
                let pos = [i, j, l];
                for axis in 0..3 {
                    if cells[axis] < 2 {
                        continue;
                    }
                    for &(d, w) in weights {
                        let mut p = pos;
                        p[axis] = reflect(pos[axis] as isize + d, cells[axis]);
                        a[row][idx(p[0], p[1], p[2])] += w / (h[axis] * h[axis]);
                    }
                }
            }
        }
    }
    a
}

pub fn matvec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &v)| r.iter().copied().chain([v]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        m.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if f != 0.0 {
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| m[r][k] * x[k]).sum();
        x[r] = (m[r][n] - s) / m[r][r];
    }
    x
}

pub fn random_values(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_unit(rng: &mut StdRng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}
