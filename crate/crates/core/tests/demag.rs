mod common;

use common::*;
use llg_core::demag::{apply_direct, DemagKernel};
use llg_core::{Mesh, VectorField};

fn random_field(mesh: Mesh, seed: u64) -> VectorField {
    let mut r = rng(seed);
    let values: Vec<[f64; 3]> = (0..mesh.cell_count()).map(|_| random_unit(&mut r)).collect();
    VectorField::from_interior(mesh, &values).unwrap()
}

fn flat(f: &VectorField) -> Vec<f64> {
    f.interior().into_iter().flatten().collect()
}

#[test]
fn transform_equals_direct_sum_at_8_cubed() {
    let mesh = Mesh::new([8, 8, 8], [1.0, 1.0, 1.0]).unwrap();
    let kernel = DemagKernel::build(mesh).unwrap();
    for seed in 0..3 {
        let m = random_field(mesh, seed);
        let fast = flat(&kernel.apply(&m).unwrap());
        let direct = flat(&apply_direct(&mesh, &m).unwrap());
        let rel = max_abs_diff(&fast, &direct) / max_abs(&direct);
        assert!(rel < 1e-10, "relative difference {rel:e}");
    }
}

#[test]
fn transform_equals_direct_sum_on_flat_anisotropic_cells() {
    let mesh = Mesh::new([10, 6, 2], [480.0, 200.0, 20.0]).unwrap();
    let kernel = DemagKernel::build(mesh).unwrap();
    let m = random_field(mesh, 7);
    let fast = flat(&kernel.apply(&m).unwrap());
    let direct = flat(&apply_direct(&mesh, &m).unwrap());
    assert!(max_abs_diff(&fast, &direct) / max_abs(&direct) < 1e-10);
}

#[test]
fn uniform_cube_interior_factor_is_one_third() {
    let mesh = Mesh::new([16, 16, 16], [1.0, 1.0, 1.0]).unwrap();
    let kernel = DemagKernel::build(mesh).unwrap();
    for dir in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]] {
        let h = kernel.apply(&VectorField::uniform(mesh, dir)).unwrap();
        let c = dir.iter().position(|&v| v == 1.0).unwrap();
        for idx in [[7, 7, 7], [8, 8, 8], [7, 8, 8]] {
            let v = h.get(idx)[c];
            assert!((v + 1.0 / 3.0).abs() < 0.02 / 3.0, "center field {v}");
        }
    }
}

#[test]
fn demag_energy_is_nonnegative() {
    let mesh = Mesh::new([6, 5, 4], [1.0, 0.8, 0.3]).unwrap();
    let kernel = DemagKernel::build(mesh).unwrap();
    for seed in 0..100 {
        let m = random_field(mesh, 100 + seed);
        let h = kernel.apply(&m).unwrap();
        let e: f64 = m.interior().iter().zip(h.interior()).map(|(a, b)| -0.5 * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2])).sum();
        assert!(e >= -1e-12, "seed {seed}: energy {e:e}");
    }
}

#[test]
fn field_is_linear_in_m() {
    let mesh = Mesh::new([5, 4, 3], [1.0, 1.0, 1.0]).unwrap();
    let kernel = DemagKernel::build(mesh).unwrap();
    let a = random_field(mesh, 1);
    let b = random_field(mesh, 2);
    let ab = VectorField::combine(&[(2.0, &a), (-0.5, &b)]).unwrap();
    let lhs = flat(&kernel.apply(&ab).unwrap());
    let ha = flat(&kernel.apply(&a).unwrap());
    let hb = flat(&kernel.apply(&b).unwrap());
    let rhs: Vec<f64> = ha.iter().zip(&hb).map(|(x, y)| 2.0 * x - 0.5 * y).collect();
    assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
}
