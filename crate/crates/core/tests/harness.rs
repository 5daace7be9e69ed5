mod common;

use std::path::Path;
use std::process::Command;

use common::rng;
use llg_core::harness::{
    convert_units, fit_slope, linear_fit, neel_wall, wall_position, ManufacturedCase, PhysicalUnits, WallTrack,
};
use llg_core::{Error, Mesh, VectorField};
use rand::Rng;

#[test]
fn locator_recovers_analytic_walls() {
    let mesh = Mesh::new([128, 16, 2], [1.0, 0.125, 0.01]).unwrap();
    let h = mesh.spacing()[0];
    for (x0, w) in [(0.5, 0.02), (0.3137, 0.05), (0.71, 0.03)] {
        let p = wall_position(&neel_wall(mesh, x0, w)).unwrap();
        assert!((p - x0).abs() < 0.1 * h, "x0 {x0}: got {p}");
        let shifted = wall_position(&neel_wall(mesh, x0 + 0.37 * h, w)).unwrap();
        assert!((shifted - p - 0.37 * h).abs() < 0.1 * h);
    }
}

#[test]
fn locator_rejects_uniform_and_double_walls() {
    let mesh = Mesh::new([32, 4, 1], [1.0, 0.125, 0.01]).unwrap();
    assert!(matches!(wall_position(&VectorField::uniform(mesh, [1.0, 0.0, 0.0])), Err(Error::Locator(_))));
    let double = VectorField::from_fn(mesh, |x| [(8.0 * (x[0] - 0.25)).tanh() * (8.0 * (0.75 - x[0])).tanh(), 0.1, 0.0]);
    assert!(matches!(wall_position(&double), Err(Error::Locator(_))));
}

#[test]
fn permalloy_conversion() {
    let u = PhysicalUnits::permalloy();
    assert!((u.saturation_tesla() - 1.0053).abs() < 1e-3);
    let d = convert_units(&u, 480.0, 1.0, 5.0).unwrap();
    assert!((d.h_e - 4.97e-3).abs() < 1e-5);
    assert!((d.q - 1.24e-4).abs() < 1e-6);
    assert!((u.tau0() - 5.65e-12).abs() < 0.05e-12);
    assert!((d.k - 0.177).abs() < 2e-3);
    assert!(convert_units(&u, -1.0, 1.0, 5.0).is_err());
}

#[test]
fn velocity_fit_tolerates_quantisation() {
    let mut r = rng(5);
    let cell = 6.25;
    for v in [50.0, 156.0, 480.0] {
        let times: Vec<f64> = (0..161).map(|i| i as f64 * 0.01).collect();
        let positions: Vec<f64> = times.iter().map(|t| 600.0 - v * t + r.gen_range(-0.5..0.5) * cell).collect();
        let mut track = WallTrack {
            alpha: 5.0,
            field_mt: 5.0,
            times_ns: times,
            positions_nm: positions,
            duration_ns: 1.6,
            truncated: false,
            fit: None,
            max_unit_deviation: 0.0,
        };
        let fit = track.fit_velocity().unwrap();
        // nm/ns == m/s
        assert!((fit.slope.abs() - v).abs() < 0.02 * v, "v {v}: fitted {}", fit.slope);
        assert!((track.speed().unwrap() - v).abs() < 0.02 * v);
    }
    let fit = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
    assert!((fit.slope - 2.0).abs() < 1e-14 && (fit.r2 - 1.0).abs() < 1e-14);
}

#[test]
fn order_slopes_ignore_error_scale() {
    let k = [0.1, 0.05, 0.025, 0.0125];
    let e: Vec<f64> = k.iter().map(|k: &f64| 3.0 * k.powi(3)).collect();
    let scaled: Vec<f64> = e.iter().map(|v| v * 1e-4).collect();
    assert!((fit_slope(&k, &e).unwrap() - 3.0).abs() < 1e-12);
    assert!((fit_slope(&k, &e).unwrap() - fit_slope(&k, &scaled).unwrap()).abs() < 1e-12);
}

#[test]
fn manufactured_solution_stays_on_the_sphere() {
    let mut r = rng(9);
    for dim in [1, 3] {
        let case = ManufacturedCase::new(dim, 10.0, 0.1).unwrap();
        for _ in 0..1000 {
            let x = [r.gen_range(0.0..1.0), r.gen_range(0.0..1.0), r.gen_range(0.0..1.0)];
            let m = case.exact(x, r.gen_range(0.0..0.1));
            let n = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
            assert!((n - 1.0).abs() <= 1e-14);
        }
    }
}

fn llg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_llg")).args(args).output().unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("llg-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn cli_outputs_are_deterministic() {
    let a = scratch("a");
    let b = scratch("b");
    for dir in [&a, &b] {
        let out = llg(&["conv-time", "--scheme", "bdf2,bdf3", "--grid", "200", "--out", dir.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for f in ["conv_time_bdf2.csv", "conv_time_bdf3.csv", "conv_time.svg"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let csv = std::fs::read_to_string(a.join("conv_time_bdf3.csv")).unwrap();
    assert!(csv.starts_with("k,h,linf,l2,h1\n"));
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.lines().nth(1).unwrap().split(',').all(|v| v.contains("e-") || v.contains("e+")));
}

#[test]
fn cli_reports_config_errors_with_code_2() {
    for args in [
        vec!["thinfilm", "--stencil", "3"],
        vec!["conv-time", "--scheme", "bdf7"],
        vec!["thinfilm", "--dt-ps", "0.3", "--t-ns", "0.1"],
        vec!["energy", "--config", "/nonexistent/llg.cfg"],
    ] {
        let out = llg(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(llg(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn cli_config_file_sections_apply() {
    let dir = scratch("cfg");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, format!("out = {}\n[conv-space]\nscheme = bdf1\ngrid = 8,16\nk = 0.01\n", dir.display())).unwrap();
    let out = llg(&["conv-space", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(Path::new(&dir.join("conv_space_bdf1.csv")).exists());
    assert!(!Path::new(&dir.join("conv_space_bdf2.csv")).exists());
}
