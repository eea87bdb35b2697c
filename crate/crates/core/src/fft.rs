//! Thin wrapper over `rustfft` with the unnormalized conventions used throughout:
//! forward `X_p = Σ_l x_l e^{-2πi lp/P}`, inverse `x_l = Σ_p X_p e^{+2πi lp/P}`
//! (callers divide by `P` where needed). Any length is accepted, primes included.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Caches plans by length; one instance is shared across a driver call.
pub(crate) struct Transforms {
    planner: FftPlanner<f64>,
}

impl Transforms {
    pub(crate) fn new() -> Self {
        Self { planner: FftPlanner::new() }
    }

    pub(crate) fn forward(&mut self, buf: &mut [Complex64]) {
        if buf.len() > 1 {
            self.planner.plan_fft_forward(buf.len()).process(buf);
        }
    }

    pub(crate) fn inverse(&mut self, buf: &mut [Complex64]) {
        if buf.len() > 1 {
            self.planner.plan_fft_inverse(buf.len()).process(buf);
        }
    }
}

/// Reduces a signed index onto `0..period`.
#[inline]
pub(crate) fn wrap(k: i64, period: usize) -> usize {
    k.rem_euclid(period as i64) as usize
}
