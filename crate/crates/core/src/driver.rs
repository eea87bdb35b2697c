//! End-to-end evaluation of `(-Δ)^{1/2}` from samples at the mapped nodes.
//!
//! The periodic driver handles inputs that are π-periodic in `s`: only even
//! modes appear and the operator is diagonal. The full driver takes `2N`
//! samples over `(0, 2π)` and assembles
//!
//! * the even modes, again diagonal;
//! * the constant part of every odd-mode kernel;
//! * the pointwise `cos s + sin²s ln cot(s/2)` part;
//! * the finite-sum part, through the fast convolution for positive and
//!   negative odd modes.
//!
//! The result is π-periodic either way, so only the first `N` nodes are returned.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{invalid, HalfLapError, Result};
use crate::extension::{extend, ExtensionKind};
use crate::fastconv::odd_mode_convolution;
use crate::fft::Transforms;
use crate::kernel::pointwise_factor;
use crate::spectral::{forward_coeffs_in, sum_double_modes, GridSpec, KrasnyThreshold, SampleVector, SpectralCoeffs};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DriverConfig {
    pub krasny: KrasnyThreshold,
    /// Keep imaginary parts even when the input was real.
    pub keep_imaginary: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfLapResult {
    /// Values at the `N` half-period nodes.
    pub values: SampleVector,
    /// Whether the imaginary parts were dropped because the input was real.
    pub is_real: bool,
}

impl HalfLapResult {
    pub fn real_values(&self) -> Vec<f64> {
        self.values.real_parts()
    }
}

fn finish(
    values: Vec<Complex64>,
    grid: GridSpec,
    input: &SampleVector,
    config: &DriverConfig,
) -> Result<HalfLapResult> {
    let is_real = !config.keep_imaginary && input.is_real();
    let values = if is_real { values.into_iter().map(|z| Complex64::new(z.re, 0.0)).collect() } else { values };
    Ok(HalfLapResult { values: SampleVector::new(values, grid)?, is_real })
}

pub fn half_laplacian_periodic(samples: &SampleVector) -> Result<HalfLapResult> {
    half_laplacian_periodic_with(samples, &DriverConfig::default())
}

/// Half-period samples of a π-periodic `u(s)`; `L` is taken from the grid.
pub fn half_laplacian_periodic_with(samples: &SampleVector, config: &DriverConfig) -> Result<HalfLapResult> {
    let grid = *samples.grid();
    if grid.is_full_period() {
        return Err(invalid("periodic driver expects half-period samples"));
    }
    let mut fft = Transforms::new();
    let coeffs = forward_coeffs_in(&mut fft, samples, config.krasny);
    let mut values = sum_double_modes(&mut fft, grid.n(), coeffs.iter().map(|(k, c)| (k, c * k.abs() as f64)));
    let l = grid.map_scale();
    for (j, v) in values.iter_mut().enumerate() {
        *v *= 2.0 * grid.node(j).sin().powi(2) / l;
    }
    finish(values, grid, samples, config)
}

pub fn half_laplacian_full(samples: &SampleVector) -> Result<HalfLapResult> {
    half_laplacian_full_with(samples, &DriverConfig::default())
}

/// Full-period (`2N`) samples of `u(s)`; returns values at the first `N` nodes.
pub fn half_laplacian_full_with(samples: &SampleVector, config: &DriverConfig) -> Result<HalfLapResult> {
    let full = *samples.grid();
    if !full.is_full_period() {
        return Err(invalid("full driver expects full-period samples"));
    }
    let mut fft = Transforms::new();
    let mut coeffs = forward_coeffs_in(&mut fft, samples, config.krasny);
    let n = full.n() as i64;
    coeffs.set(-n, ZERO);
    let values = assemble_full(&mut fft, &coeffs, &full.to_half_period())?;
    finish(values, full.to_half_period(), samples, config)
}

fn assemble_full(fft: &mut Transforms, u: &SpectralCoeffs, half: &GridSpec) -> Result<Vec<Complex64>> {
    let n = half.n();
    let ni = n as i64;
    let (lo, hi) = (ni / 2, (ni + 1) / 2);
    let l = half.map_scale();
    let pref = Complex64::new(0.0, 2.0 / (l * PI));

    // Even modes 2k, k ∈ [-⌊N/2⌋, ⌈N/2⌉-1].
    let even = sum_double_modes(fft, n, (-lo..hi).map(|k| (k, u[2 * k] * k.abs() as f64)));

    // Odd modes 2k+1, k ∈ [-⌈N/2⌉, ⌊N/2⌋-1].
    let odd_range = -hi..lo;
    let constant: Complex64 = odd_range
        .clone()
        .map(|k| {
            let m = 2 * k + 1;
            u[m] * m.signum() as f64 / (m.abs() + 2) as f64
        })
        .sum();
    let odd = sum_double_modes(fft, n, odd_range.map(|k| (k, u[2 * k + 1] * (2 * k + 1) as f64)));

    // Positive odd modes a⁺_l = û(2l+1) for l < ⌊N/2⌋; negative a⁻_l = û(-2l-1) for l < ⌈N/2⌉.
    let plus: Vec<Complex64> = (0..lo).map(|l| u[2 * l + 1]).collect();
    let minus: Vec<Complex64> = (0..hi).map(|l| u[-2 * l - 1]).collect();
    let conv_plus = if plus.is_empty() { Vec::new() } else { odd_mode_convolution(fft, &plus, n)? };
    let conv_minus = odd_mode_convolution(fft, &minus, n)?;
    let conv_terms = conv_plus
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k as i64, v))
        .chain(conv_minus.into_iter().enumerate().map(|(k, v)| (-(k as i64), -v)));
    let conv = sum_double_modes(fft, n, conv_terms);

    Ok((0..n)
        .map(|j| {
            let s = half.node(j);
            let diag = even[j] * 2.0 * s.sin().powi(2) / l;
            let pointwise = pointwise_factor(s) * Complex64::from_polar(1.0, s) * odd[j];
            diag + pref * (conv[j] - constant - pointwise)
        })
        .collect())
}

/// Samples `f` at `x_j = L cot s_j`, extends as requested and runs the
/// matching driver. Returns the node coordinates alongside the result.
pub fn apply_to_function(
    f: impl Fn(f64) -> f64,
    n: usize,
    map_scale: f64,
    ext: &ExtensionKind,
) -> Result<(Vec<f64>, HalfLapResult)> {
    apply_to_function_with(f, n, map_scale, ext, &DriverConfig::default())
}

pub fn apply_to_function_with(
    f: impl Fn(f64) -> f64,
    n: usize,
    map_scale: f64,
    ext: &ExtensionKind,
    config: &DriverConfig,
) -> Result<(Vec<f64>, HalfLapResult)> {
    let grid = GridSpec::half_period(n, map_scale)?;
    let x = grid.x_nodes();
    let mut values = Vec::with_capacity(n);
    for (node, &xj) in x.iter().enumerate() {
        let value = f(xj);
        if !value.is_finite() {
            return Err(HalfLapError::Evaluation { node, x: xj, value });
        }
        values.push(value);
    }
    let samples = SampleVector::from_real(&values, grid)?;
    let result = match ext {
        ExtensionKind::None => half_laplacian_periodic_with(&samples, config)?,
        kind => half_laplacian_full_with(&extend(&samples, kind)?, config)?,
    };
    Ok((x, result))
}
