mod common;

use common::*;
use llg_core::ops::StencilOrder;
use llg_core::solver::{axis_eigenvalues, SolverPlan};
use llg_core::{Mesh, ScalarField};

const GRIDS: [[usize; 3]; 4] = [[8, 1, 1], [7, 5, 1], [6, 5, 4], [8, 8, 8]];

fn weights(order: StencilOrder) -> Vec<(isize, f64)> {
    match order {
        StencilOrder::Second => second_weights(),
        StencilOrder::Fourth => fourth_weights(),
    }
}

fn operator(mesh: &Mesh, a: f64, b: f64, order: StencilOrder) -> Vec<Vec<f64>> {
    let mut m = dense_laplacian(mesh.cells(), mesh.spacing(), &weights(order));
    for (i, row) in m.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v *= -b;
        }
        row[i] += a;
    }
    m
}

#[test]
fn matches_dense_solve_for_both_stencils() {
    let mut rng = rng(1);
    for cells in GRIDS {
        let mesh = Mesh::new(cells, [1.0, 0.7, 1.3]).unwrap();
        for order in [StencilOrder::Second, StencilOrder::Fourth] {
            for (a, b) in [(1.0, 0.3), (11.0 / 6.0, 2e-3), (1.5, 10.0)] {
                let plan = SolverPlan::new(mesh, a, b, order).unwrap();
                let rhs = random_values(&mut rng, mesh.cell_count());
                let fast = plan.solve(&ScalarField::from_values(mesh, rhs.clone()).unwrap()).unwrap();
                let dense = dense_solve(&operator(&mesh, a, b, order), &rhs);
                let rel = max_abs_diff(fast.values(), &dense) / max_abs(&dense);
                assert!(rel < 1e-10, "{cells:?} {order:?} a={a} b={b}: rel {rel:e}");
            }
        }
    }
}

#[test]
fn cosine_modes_are_eigenvectors() {
    let cells = [8, 6, 4];
    let mesh = Mesh::new(cells, [1.0, 1.0, 0.5]).unwrap();
    let h = mesh.spacing();
    for order in [StencilOrder::Second, StencilOrder::Fourth] {
        let (a, b) = (1.0, 0.25);
        let op = operator(&mesh, a, b, order);
        let eig: Vec<Vec<f64>> = (0..3).map(|ax| axis_eigenvalues(cells[ax], h[ax], order)).collect();
        for kx in 0..cells[0] {
            for ky in [0, 1, cells[1] - 1] {
                for kz in [0, cells[2] - 1] {
                    let mode = ScalarField::from_fn(mesh, |x| {
                        (std::f64::consts::PI * kx as f64 * x[0] / 1.0).cos()
                            * (std::f64::consts::PI * ky as f64 * x[1] / 1.0).cos()
                            * (std::f64::consts::PI * kz as f64 * x[2] / 0.5).cos()
                    });
                    let v = mode.values();
                    let lambda = a + b * (eig[0][kx] + eig[1][ky] + eig[2][kz]);
                    let av = matvec(&op, v);
                    let res = av.iter().zip(v).map(|(p, q)| (p - lambda * q).abs()).fold(0.0, f64::max);
                    assert!(res < 1e-11 * lambda.abs().max(1.0), "{order:?} ({kx},{ky},{kz}): residual {res:e}");
                }
            }
        }
    }
}

#[test]
fn solve_then_apply_round_trips() {
    let mut rng = rng(2);
    for cells in [[16, 1, 1], [12, 10, 1], [10, 9, 8]] {
        let mesh = Mesh::new(cells, [2.0, 1.0, 1.0]).unwrap();
        for order in [StencilOrder::Second, StencilOrder::Fourth] {
            let plan = SolverPlan::new(mesh, 1.5, 0.05, order).unwrap();
            for _ in 0..10 {
                let rhs = ScalarField::from_values(mesh, random_values(&mut rng, mesh.cell_count())).unwrap();
                let back = plan.apply_operator(&plan.solve(&rhs).unwrap()).unwrap();
                let rel = max_abs_diff(back.values(), rhs.values()) / max_abs(rhs.values());
                assert!(rel < 1e-10, "{cells:?} {order:?}: {rel:e}");
            }
        }
    }
}

#[test]
fn mirrored_rhs_gives_mirrored_solution() {
    let mut rng = rng(3);
    let cells = [9, 6, 5];
    let mesh = Mesh::new(cells, [1.0, 1.0, 1.0]).unwrap();
    let plan = SolverPlan::new(mesh, 1.0, 0.1, StencilOrder::Fourth).unwrap();
    let rhs = random_values(&mut rng, mesh.cell_count());
    let idx = |i: usize, j: usize, l: usize| i + cells[0] * (j + cells[1] * l);
    let mut mirrored = rhs.clone();
    for l in 0..cells[2] {
        for j in 0..cells[1] {
            for i in 0..cells[0] {
                mirrored[idx(cells[0] - 1 - i, j, l)] = rhs[idx(i, j, l)];
            }
        }
    }
    let u = plan.solve(&ScalarField::from_values(mesh, rhs).unwrap()).unwrap();
    let w = plan.solve(&ScalarField::from_values(mesh, mirrored).unwrap()).unwrap();
    for l in 0..cells[2] {
        for j in 0..cells[1] {
            for i in 0..cells[0] {
                let d = (u.values()[idx(i, j, l)] - w.values()[idx(cells[0] - 1 - i, j, l)]).abs();
                assert!(d < 1e-13, "asymmetry {d:e}");
            }
        }
    }
}
