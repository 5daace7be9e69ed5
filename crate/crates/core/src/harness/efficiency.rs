//! Cost-versus-accuracy study on the manufactured case.

use super::convergence::{run_case, StudyOptions};
use super::manufactured::ManufacturedCase;
use crate::error::{Error, Result};
use crate::integrators::Scheme;

/// One run: sup-norm error and median wall time over repeats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyPoint {
    pub scheme: Scheme,
    pub k: f64,
    pub cells: usize,
    pub error: f64,
    pub seconds: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

/// Runs every `(k, n)` pair `repeats` times; the error must be identical
/// across repeats, the reported time is the median.
pub fn efficiency_point(scheme: Scheme, case: &ManufacturedCase, n: usize, k: f64, repeats: usize, opts: StudyOptions) -> Result<EfficiencyPoint> {
    if repeats == 0 {
        return Err(Error::Config("at least one repeat required".into()));
    }
    let mut times = Vec::with_capacity(repeats);
    let mut error = None;
    for _ in 0..repeats {
        let row = run_case(scheme, case, n, k, opts)?;
        match error {
            None => error = Some(row.norms.linf),
            Some(e) if e.to_bits() != row.norms.linf.to_bits() => {
                return Err(Error::Config(format!("non-deterministic error: {e:e} vs {:e}", row.norms.linf)));
            }
            _ => {}
        }
        times.push(row.seconds);
    }
    Ok(EfficiencyPoint { scheme, k, cells: n, error: error.unwrap(), seconds: median(times) })
}

/// Varying step at fixed grid.
pub fn efficiency_time(scheme: Scheme, case: &ManufacturedCase, k_ladder: &[f64], n: usize, repeats: usize, opts: StudyOptions) -> Result<Vec<EfficiencyPoint>> {
    k_ladder.iter().map(|&k| efficiency_point(scheme, case, n, k, repeats, opts)).collect()
}

/// Varying grid at fixed step.
pub fn efficiency_space(scheme: Scheme, case: &ManufacturedCase, n_ladder: &[usize], k: f64, repeats: usize, opts: StudyOptions) -> Result<Vec<EfficiencyPoint>> {
    n_ladder.iter().map(|&n| efficiency_point(scheme, case, n, k, repeats, opts)).collect()
}

/// True when every point of `other` is beaten by some point of `candidate`
/// with no larger error and strictly less time.
pub fn pareto_dominates(candidate: &[EfficiencyPoint], other: &[EfficiencyPoint]) -> bool {
    other.iter().all(|o| candidate.iter().any(|c| c.error <= o.error && c.seconds < o.seconds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(error: f64, seconds: f64) -> EfficiencyPoint {
        EfficiencyPoint { scheme: Scheme::Bdf1, k: 0.0, cells: 0, error, seconds }
    }

    #[test]
    fn dominance() {
        let slow = [pt(1e-3, 1.0), pt(1e-4, 10.0)];
        assert!(pareto_dominates(&[pt(1e-5, 0.5)], &slow));
        assert!(!pareto_dominates(&[pt(1e-5, 5.0)], &slow));
        assert!(!pareto_dominates(&[pt(1e-5, 1.0)], &slow));
        assert!(pareto_dominates(&[], &[]));
    }

    #[test]
    fn median_of_repeats() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0]), 2.5);
    }

    #[test]
    fn repeated_runs_give_identical_errors() {
        let case = ManufacturedCase::new(1, 10.0, 0.1).unwrap();
        let p = efficiency_point(Scheme::Bdf2, &case, 32, 0.1 / 8.0, 2, StudyOptions::default()).unwrap();
        assert!(p.error > 0.0 && p.seconds >= 0.0);
        assert!(efficiency_point(Scheme::Bdf2, &case, 32, 0.1 / 8.0, 0, StudyOptions::default()).is_err());
    }
}
