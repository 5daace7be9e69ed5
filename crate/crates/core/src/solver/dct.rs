//! Type-II cosine transform on cell-centred samples and its exact inverse,
//! each computed with one complex FFT of the same length (Makhoul's
//! reordering).
//!
//! Forward: `X[j] = sum_i x[i] cos(pi j (i + 1/2) / n)`.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

#[derive(Clone)]
pub struct CosineTransform {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `exp(-i pi j / 2n)`
    twiddle: Vec<Complex64>,
}

impl std::fmt::Debug for CosineTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CosineTransform").field("n", &self.n).finish()
    }
}

impl CosineTransform {
    pub fn new(n: usize, planner: &mut FftPlanner<f64>) -> Self {
        assert!(n > 0);
        let twiddle = (0..n).map(|j| Complex64::from_polar(1.0, -PI * j as f64 / (2 * n) as f64)).collect();
        Self { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n), twiddle }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Scratch buffer size needed by [`forward`](Self::forward) and [`inverse`](Self::inverse).
    pub fn scratch_len(&self) -> usize {
        self.n + self.forward.get_inplace_scratch_len().max(self.inverse.get_inplace_scratch_len())
    }

    pub fn forward(&self, x: &mut [f64], scratch: &mut [Complex64]) {
        let n = self.n;
        let (v, fft_scratch) = scratch.split_at_mut(n);
        for k in 0..n.div_ceil(2) {
            v[k] = Complex64::new(x[2 * k], 0.0);
        }
        for k in 0..n / 2 {
            v[n - 1 - k] = Complex64::new(x[2 * k + 1], 0.0);
        }
        self.forward.process_with_scratch(v, fft_scratch);
        for j in 0..n {
            x[j] = (self.twiddle[j] * v[j]).re;
        }
    }

    /// Exact inverse of [`forward`](Self::forward).
    pub fn inverse(&self, x: &mut [f64], scratch: &mut [Complex64]) {
        let n = self.n;
        let (v, fft_scratch) = scratch.split_at_mut(n);
        v[0] = Complex64::new(x[0], 0.0);
        for j in 1..n {
            v[j] = self.twiddle[j].conj() * Complex64::new(x[j], -x[n - j]);
        }
        self.inverse.process_with_scratch(v, fft_scratch);
        let inv_n = 1.0 / n as f64;
        for k in 0..n.div_ceil(2) {
            x[2 * k] = v[k].re * inv_n;
        }
        for k in 0..n / 2 {
            x[2 * k + 1] = v[n - 1 - k].re * inv_n;
        }
    }
}
