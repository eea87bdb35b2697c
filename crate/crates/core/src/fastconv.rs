//! Fast evaluation of `Σ_{l=0}^{M} a_l (-Δ)_s^{1/2} e^{±i(2l+1)s}`.
//!
//! Each odd-mode kernel carries a finite sum whose length grows with the mode,
//! so the naive combination costs `O(M²)` per node. Rewriting the double sum as
//! a circular convolution of two `P`-periodic sequences `b̃` and `c̃` brings the
//! cost down to a handful of FFTs. Because `c̃` has a block of zeros between
//! `l = 1` and `l = P-M-1`, every `P ≥ 2M+1` gives the same (exact) result.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::fft::Transforms;
use crate::kernel::{cubic_denominator, pointwise_factor, ModeSign};
use crate::spectral::{sum_double_modes, GridSpec, SampleVector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A `P`-periodic complex sequence, stored as one period.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvSeq {
    values: Vec<Complex64>,
}

impl ConvSeq {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("a periodic sequence needs at least one entry"));
        }
        Ok(Self { values })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }
}

/// Coefficients `a_0..a_M` of a combination of odd modes `±(2l+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OddCombinationSpec {
    a: Vec<Complex64>,
    sign: ModeSign,
    map_scale: f64,
    period: usize,
}

impl OddCombinationSpec {
    pub fn new(a: Vec<Complex64>, sign: ModeSign, map_scale: f64, period: usize) -> Result<Self> {
        if a.is_empty() {
            return Err(invalid("coefficient list must hold a_0..a_M with M ≥ 0"));
        }
        if !(map_scale.is_finite() && map_scale > 0.0) {
            return Err(invalid(format!("map scale L must be positive and finite, got {map_scale}")));
        }
        check_period(a.len() - 1, period)?;
        Ok(Self { a, sign, map_scale, period })
    }

    /// Uses the smallest admissible period, `2M+1`.
    pub fn with_min_period(a: Vec<Complex64>, sign: ModeSign, map_scale: f64) -> Result<Self> {
        let period = 2 * a.len().max(1) - 1;
        Self::new(a, sign, map_scale, period)
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn sign(&self) -> ModeSign {
        self.sign
    }

    pub fn map_scale(&self) -> f64 {
        self.map_scale
    }

    pub fn period(&self) -> usize {
        self.period
    }
}

fn check_period(m: usize, p: usize) -> Result<()> {
    if p < 2 * m + 1 {
        return Err(invalid(format!("period P = {p} is below 2M+1 = {}", 2 * m + 1)));
    }
    Ok(())
}

/// `b̃_l = (8l+4)a_l` for `l ≤ M`, zero up to `P-1`.
pub fn build_b_sequence(a: &[Complex64], m: usize, p: usize) -> Result<ConvSeq> {
    if a.len() != m + 1 {
        return Err(invalid(format!("expected {} coefficients for M = {m}, got {}", m + 1, a.len())));
    }
    check_period(m, p)?;
    let mut values = vec![ZERO; p];
    for (l, (slot, &al)) in values.iter_mut().zip(a).enumerate() {
        *slot = al * (8 * l + 4) as f64;
    }
    ConvSeq::new(values)
}

/// `c̃_0 = 1/3`, `c̃_l = 1/((2(l-P)-3)(2(l-P)-1)(2(l-P)+1))` for `P-M ≤ l < P`, zero otherwise.
pub fn build_c_sequence(m: usize, p: usize) -> Result<ConvSeq> {
    check_period(m, p)?;
    let mut values = vec![ZERO; p];
    values[0] = Complex64::new(1.0 / 3.0, 0.0);
    for (l, slot) in values.iter_mut().enumerate().skip(p - m) {
        // (2n-3)(2n-1)(2n+1) with n = l-P equals cubic_denominator(n-1).
        let n = l as i64 - p as i64;
        *slot = Complex64::new(1.0 / cubic_denominator(n - 1), 0.0);
    }
    ConvSeq::new(values)
}

fn check_same_period(b: &ConvSeq, c: &ConvSeq) -> Result<()> {
    if b.period() != c.period() {
        return Err(invalid(format!("period mismatch: {} vs {}", b.period(), c.period())));
    }
    Ok(())
}

/// `(b∗c)_l = Σ_n b_n c_{l-n mod P}` through the convolution theorem.
pub fn circular_convolve(b: &ConvSeq, c: &ConvSeq) -> Result<ConvSeq> {
    circular_convolve_in(&mut Transforms::new(), b, c)
}

fn circular_convolve_in(fft: &mut Transforms, b: &ConvSeq, c: &ConvSeq) -> Result<ConvSeq> {
    check_same_period(b, c)?;
    let p = b.period();
    let mut fb = b.values.clone();
    let mut fc = c.values.clone();
    fft.forward(&mut fb);
    fft.forward(&mut fc);
    let scale = 1.0 / p as f64;
    for (x, y) in fb.iter_mut().zip(&fc) {
        *x *= y * scale;
    }
    fft.inverse(&mut fb);
    ConvSeq::new(fb)
}

/// The same sum by the literal `O(P²)` double loop.
pub fn direct_convolve(b: &ConvSeq, c: &ConvSeq) -> Result<ConvSeq> {
    check_same_period(b, c)?;
    let p = b.period();
    let values = (0..p).map(|l| (0..p).map(|n| b.values[n] * c.values[(l + p - n) % p]).sum()).collect();
    ConvSeq::new(values)
}

/// `(b̃∗c̃)_l` for `l = 0..=M`, the only entries the combination needs.
pub(crate) fn odd_mode_convolution(fft: &mut Transforms, a: &[Complex64], p: usize) -> Result<Vec<Complex64>> {
    let m = a.len() - 1;
    let b = build_b_sequence(a, m, p)?;
    let c = build_c_sequence(m, p)?;
    let mut conv = circular_convolve_in(fft, &b, &c)?.into_values();
    conv.truncate(m + 1);
    Ok(conv)
}

/// `Σ_l a_l (-Δ)_s^{1/2} e^{σi(2l+1)s}` at every node of a half-period grid.
pub fn odd_mode_combination(spec: &OddCombinationSpec, grid: &GridSpec) -> Result<SampleVector> {
    if grid.is_full_period() {
        return Err(invalid("odd_mode_combination evaluates on a half-period grid"));
    }
    let n = grid.n();
    let sigma = spec.sign.as_f64();
    let a = &spec.a;
    let pref = Complex64::new(0.0, 2.0 / (spec.map_scale * PI));

    let constant: Complex64 = a.iter().enumerate().map(|(l, &al)| al / (2 * l + 3) as f64).sum();
    let mut fft = Transforms::new();
    let conv = odd_mode_convolution(&mut fft, a, spec.period)?;
    let conv_sum = sum_double_modes(&mut fft, n, conv.iter().enumerate().map(|(l, &v)| (sign_index(l, sigma), v)));
    let odd_sum = sum_double_modes(
        &mut fft,
        n,
        a.iter().enumerate().map(|(l, &al)| (sign_index(l, sigma), al * (2 * l + 1) as f64)),
    );

    let values = (0..n)
        .map(|j| {
            let s = grid.node(j);
            let pointwise = pointwise_factor(s) * Complex64::from_polar(1.0, sigma * s) * odd_sum[j];
            pref * sigma * (conv_sum[j] - constant - pointwise)
        })
        .collect();
    SampleVector::new(values, *grid)
}

#[inline]
fn sign_index(l: usize, sigma: f64) -> i64 {
    if sigma > 0.0 {
        l as i64
    } else {
        -(l as i64)
    }
}
