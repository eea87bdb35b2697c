//! Closed forms of the half Laplacian applied to a single Fourier mode
//! `e^{iks}` of the mapped variable, together with the special functions
//! they are built from.
//!
//! Even modes are diagonal: `(|k| sin²s / L) e^{iks}`. Odd modes reduce to a
//! finite sum of `(|k|+1)/2` terms plus the pointwise factor
//! `cos s + sin²s · ln cot(s/2)`, see [`pointwise_factor`]. The `₂F₁` form is
//! kept alongside as an algebraically independent route for cross-checks.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{invalid, HalfLapError, Result};
use crate::reference::argsinh;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Which family of odd modes a combination refers to: `e^{+i(2l+1)s}` or `e^{-i(2l+1)s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeSign {
    Positive,
    Negative,
}

impl ModeSign {
    pub fn as_f64(self) -> f64 {
        match self {
            ModeSign::Positive => 1.0,
            ModeSign::Negative => -1.0,
        }
    }

    pub fn of(k: i64) -> Self {
        if k < 0 {
            ModeSign::Negative
        } else {
            ModeSign::Positive
        }
    }
}

/// Arguments of a single-mode evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeKernelInput {
    pub k: i64,
    pub s: f64,
    pub map_scale: f64,
}

impl ModeKernelInput {
    pub fn new(k: i64, s: f64, map_scale: f64) -> Result<Self> {
        check_s(s)?;
        check_scale(map_scale)?;
        Ok(Self { k, s, map_scale })
    }

    /// Dispatches on the parity of `k`.
    pub fn evaluate(&self) -> Complex64 {
        if self.k % 2 == 0 {
            even_unchecked(self.k, self.s, self.map_scale)
        } else {
            odd_unchecked(self.k, self.s, self.map_scale)
        }
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < PI {
        Ok(())
    } else {
        Err(invalid(format!("s must lie in the open interval (0, π), got {s}")))
    }
}

fn check_scale(l: f64) -> Result<()> {
    if l > 0.0 && l.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("map scale must be positive, got {l}")))
    }
}

fn check_odd(k: i64) -> Result<()> {
    if k % 2 != 0 {
        Ok(())
    } else {
        Err(invalid(format!("mode index must be odd, got {k}")))
    }
}

/// Rising factorial `(z)_n = z(z+1)…(z+n-1)`, with `(z)_0 = 1`.
pub fn pochhammer(z: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z + j as f64))
}

/// Parameters of `₂F₁(a, b; c; z)` restricted to where the defining series converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: Complex64,
}

impl HypergeomParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Self> {
        if c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0 {
            return Err(invalid(format!("c = {c} is a non-positive integer")));
        }
        let r = z.norm();
        if r > 1.0 + 1e-12 {
            return Err(invalid(format!("|z| = {r} lies outside the unit disk")));
        }
        if r >= 1.0 - 1e-12 && (c - a - b).re <= 0.0 {
            return Err(invalid(format!("series on |z| = 1 needs Re(c) > Re(a + b), got c - a - b = {}", c - a - b)));
        }
        Ok(Self { a, b, c, z })
    }

    pub fn real(a: f64, b: f64, c: f64, z: Complex64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), z)
    }
}

/// Partial sums of the Gauss series `Σ (a)_n (b)_n / ((c)_n n!) zⁿ`, stopped
/// once a term drops below `tol·(1 + |sum|)`. Only used as a cross-check; the
/// production paths go through the finite forms.
pub fn gauss_2f1_series(p: &HypergeomParams, tol: f64, max_terms: usize) -> Result<Complex64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..max_terms {
        sum += term;
        if term.norm() < tol * (1.0 + sum.norm()) {
            return Ok(sum);
        }
        let nf = n as f64;
        term *= (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * p.z;
    }
    Err(HalfLapError::NoConvergence { terms: max_terms, partial_sum: sum })
}

/// `ln cot(s/2)`, evaluated as `argsinh(cot s)` so it stays finite near 0 and π.
#[inline]
pub fn log_cot_half(s: f64) -> f64 {
    argsinh(s.cos() / s.sin())
}

/// `cos s + sin²s · ln cot(s/2)`, the factor shared by every odd mode.
#[inline]
pub fn pointwise_factor(s: f64) -> f64 {
    let sin = s.sin();
    s.cos() + sin * sin * log_cot_half(s)
}

/// `atanh(e^{±is}) = ½ ln cot(s/2) ± iπ/4` for `s ∈ (0, π)`.
pub fn atanh_unit_circle(s: f64, sign: ModeSign) -> Result<Complex64> {
    check_s(s)?;
    Ok(Complex64::new(0.5 * log_cot_half(s), sign.as_f64() * PI / 4.0))
}

/// `(2n-1)(2n+1)(2n+3)`.
#[inline]
pub(crate) fn cubic_denominator(n: i64) -> f64 {
    let n = n as f64;
    (2.0 * n - 1.0) * (2.0 * n + 1.0) * (2.0 * n + 3.0)
}

/// `Σ_{n=0}^{(|k|-1)/2} e^{-i sgn(k)(2n+1)s} / ((2n-1)(2n+1)(2n+3))`, accumulated in increasing `n`.
fn odd_finite_sum(k: i64, s: f64) -> Complex64 {
    let sgn = if k < 0 { -1.0 } else { 1.0 };
    let last = (k.abs() - 1) / 2;
    (0..=last).map(|n| Complex64::from_polar(1.0, -sgn * (2 * n + 1) as f64 * s) / cubic_denominator(n)).sum()
}

/// `₂F₁(1, -k/2-1; -k/2+2; e^{i2s})` for odd `k`, through its finite-sum reduction.
pub fn gauss_2f1_odd_finite(k: i64, s: f64) -> Result<Complex64> {
    check_odd(k)?;
    check_s(s)?;
    let kf = k as f64;
    let sin2 = s.sin().powi(2);
    let chi = if k <= -1 { 1.0 } else { 0.0 };
    let bracket = odd_finite_sum(k, s) + 0.25 * s.cos() + I * (PI / 8.0) * sin2 + 0.25 * sin2 * log_cot_half(s);
    Ok(chi - kf * (4.0 - kf * kf) * Complex64::from_polar(1.0, kf * s) * bracket)
}

fn even_unchecked(k: i64, s: f64, l: f64) -> Complex64 {
    let sin = s.sin();
    Complex64::from_polar(k.abs() as f64 * sin * sin / l, k as f64 * s)
}

fn odd_unchecked(k: i64, s: f64, l: f64) -> Complex64 {
    let kf = k as f64;
    let sgn = if k < 0 { -1.0 } else { 1.0 };
    let constant = -2.0 * I * sgn / (l * PI * (k.abs() as f64 + 2.0));
    let bracket = pointwise_factor(s) + 4.0 * odd_finite_sum(k, s);
    constant - 2.0 * I * kf / (l * PI) * Complex64::from_polar(1.0, kf * s) * bracket
}

/// `(-Δ)_s^{1/2} e^{iks}` for even `k`.
pub fn half_lap_mode_even(k: i64, s: f64, map_scale: f64) -> Result<Complex64> {
    if k % 2 != 0 {
        return Err(invalid(format!("mode index must be even, got {k}")));
    }
    check_s(s)?;
    check_scale(map_scale)?;
    Ok(even_unchecked(k, s, map_scale))
}

/// `(-Δ)_s^{1/2} e^{iks}` for odd `k`, as a finite sum of `(|k|+1)/2` terms.
pub fn half_lap_mode_odd(k: i64, s: f64, map_scale: f64) -> Result<Complex64> {
    check_odd(k)?;
    check_s(s)?;
    check_scale(map_scale)?;
    Ok(odd_unchecked(k, s, map_scale))
}

/// The same quantity through `₂F₁(1, -k/2-1; -k/2+2; e^{i2s})`.
pub fn half_lap_mode_odd_2f1(k: i64, s: f64, map_scale: f64) -> Result<Complex64> {
    check_odd(k)?;
    check_scale(map_scale)?;
    let f = gauss_2f1_odd_finite(k, s)?;
    let kf = k as f64;
    let l = map_scale;
    Ok(-2.0 * I / (l * PI * (kf + 2.0)) - kf / l * s.sin().powi(2) * Complex64::from_polar(1.0, kf * s)
        + 8.0 * I * f / (l * PI * (4.0 - kf * kf)))
}

fn check_positive_odd(k: i64) -> Result<()> {
    if k >= 1 && k % 2 == 1 {
        Ok(())
    } else {
        Err(invalid(format!("expected a positive odd mode index, got {k}")))
    }
}

/// `(-Δ)_s^{1/2} cos(ks)` at `L = 1` for positive odd `k`.
pub fn half_lap_mode_cos(k: i64, s: f64) -> Result<f64> {
    check_positive_odd(k)?;
    check_s(s)?;
    let kf = k as f64;
    let tail: f64 = (0..=(k - 1) / 2).map(|n| ((k - 1 - 2 * n) as f64 * s).sin() / cubic_denominator(n)).sum();
    Ok(2.0 * kf / PI * (kf * s).sin() * pointwise_factor(s) + 8.0 * kf / PI * tail)
}

/// `(-Δ)_s^{1/2} sin(ks)` at `L = 1` for positive odd `k`.
pub fn half_lap_mode_sin(k: i64, s: f64) -> Result<f64> {
    check_positive_odd(k)?;
    check_s(s)?;
    let kf = k as f64;
    let tail: f64 = (0..=(k - 1) / 2).map(|n| ((k - 1 - 2 * n) as f64 * s).cos() / cubic_denominator(n)).sum();
    Ok(-2.0 / (PI * (kf + 2.0)) - 2.0 * kf / PI * (kf * s).cos() * pointwise_factor(s) - 8.0 * kf / PI * tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::oracle_mode_series;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn interior_points(count: usize) -> Vec<f64> {
        (1..=count).map(|i| PI * i as f64 / (count + 1) as f64).collect()
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c(5.0, 0.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(3.0, 0.0), 2), c(12.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 5), c(120.0, 0.0));
    }

    #[test]
    fn series_trivial_at_origin() {
        let p = HypergeomParams::real(1.0, 1.0, 2.0, c(0.0, 0.0)).unwrap();
        assert_eq!(gauss_2f1_series(&p, 1e-15, 10).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn series_k1_at_minus_one() {
        let p = HypergeomParams::real(1.0, -1.5, 1.5, c(-1.0, 0.0)).unwrap();
        let v = gauss_2f1_series(&p, 1e-15, 10_000_000).unwrap();
        let expected = 1.0 + 3.0 * PI / 8.0;
        assert!((v - expected).norm() < 1e-12, "{v}");
        let finite = gauss_2f1_odd_finite(1, PI / 2.0).unwrap();
        assert!((finite - expected).norm() < 1e-14, "{finite}");
    }

    #[test]
    fn series_km1_at_minus_one_matches_finite() {
        let p = HypergeomParams::real(1.0, -0.5, 2.5, c(-1.0, 0.0)).unwrap();
        let series = gauss_2f1_series(&p, 1e-15, 10_000_000).unwrap();
        let finite = gauss_2f1_odd_finite(-1, PI / 2.0).unwrap();
        assert!((series - finite).norm() < 1e-12, "{series} vs {finite}");
        assert!((finite - 3.0 * PI / 8.0).norm() < 1e-14);
    }

    #[test]
    fn series_k3_on_unit_circle_matches_finite() {
        let s = PI / 3.0;
        let z = Complex64::from_polar(1.0, 2.0 * s);
        let p = HypergeomParams::real(1.0, -2.5, 0.5, z).unwrap();
        let series = gauss_2f1_series(&p, 1e-15, 10_000_000).unwrap();
        let finite = gauss_2f1_odd_finite(3, s).unwrap();
        assert!((series - finite).norm() < 1e-12, "{series} vs {finite}");
    }

    #[test]
    fn series_matches_finite_over_many_modes() {
        for k in [-7i64, -5, -3, 1, 5, 9] {
            for &s in &[0.4, 1.3, 2.6] {
                let kf = k as f64;
                let z = Complex64::from_polar(1.0, 2.0 * s);
                let p = HypergeomParams::real(1.0, -kf / 2.0 - 1.0, -kf / 2.0 + 2.0, z).unwrap();
                let series = gauss_2f1_series(&p, 1e-16, 10_000_000).unwrap();
                let finite = gauss_2f1_odd_finite(k, s).unwrap();
                assert!((series - finite).norm() < 1e-10 * (1.0 + finite.norm()), "k = {k}, s = {s}");
            }
        }
    }

    #[test]
    fn series_reports_non_convergence() {
        let p = HypergeomParams::real(1.0, -1.5, 1.5, c(-1.0, 0.0)).unwrap();
        match gauss_2f1_series(&p, 1e-15, 5) {
            Err(HalfLapError::NoConvergence { terms, partial_sum }) => {
                assert_eq!(terms, 5);
                assert!(partial_sum.norm() > 0.0);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn hypergeom_params_reject_divergent_cases() {
        assert!(HypergeomParams::real(1.0, 1.0, -2.0, c(0.5, 0.0)).is_err());
        assert!(HypergeomParams::real(1.0, 1.0, 2.0, c(1.5, 0.0)).is_err());
        assert!(HypergeomParams::real(1.0, 1.0, 2.0, c(-1.0, 0.0)).is_err());
        assert!(HypergeomParams::real(1.0, -1.5, 1.5, c(-1.0, 0.0)).is_ok());
    }

    #[test]
    fn finite_form_rejects_even_k() {
        assert!(gauss_2f1_odd_finite(2, 1.0).is_err());
        assert!(gauss_2f1_odd_finite(0, 1.0).is_err());
    }

    #[test]
    fn finite_form_reflection() {
        // Real parameters and conj(e^{i2s}) = e^{i2(π-s)}.
        for k in [1i64, 3, -5] {
            for &s in &[0.3, 1.1] {
                let a = gauss_2f1_odd_finite(k, s).unwrap();
                let b = gauss_2f1_odd_finite(k, PI - s).unwrap();
                assert!((a - b.conj()).norm() < 1e-12 * (1.0 + a.norm()), "k = {k}, s = {s}");
            }
        }
    }

    #[test]
    fn atanh_values() {
        let v = atanh_unit_circle(PI / 2.0, ModeSign::Positive).unwrap();
        assert!((v - c(0.0, PI / 4.0)).norm() < 1e-15);
        let v = atanh_unit_circle(PI / 2.0, ModeSign::Negative).unwrap();
        assert!((v - c(0.0, -PI / 4.0)).norm() < 1e-15);
        let v = atanh_unit_circle(PI / 3.0, ModeSign::Positive).unwrap();
        assert!((v - c(3f64.ln() / 4.0, PI / 4.0)).norm() < 1e-15);
        assert!(atanh_unit_circle(0.0, ModeSign::Positive).is_err());
        assert!(atanh_unit_circle(PI, ModeSign::Negative).is_err());
    }

    #[test]
    fn atanh_partial_sums_approach_closed_form() {
        let terms = 100_000usize;
        for &s in &[PI / 2.0, 0.7, 2.2] {
            for sign in [ModeSign::Positive, ModeSign::Negative] {
                let sg = sign.as_f64();
                let partial: Complex64 = (0..terms)
                    .map(|n| Complex64::from_polar(1.0, sg * (2 * n + 1) as f64 * s) / (2 * n + 1) as f64)
                    .sum();
                let exact = atanh_unit_circle(s, sign).unwrap();
                // Abel summation bound on the tail of Σ e^{i(2n+1)s}/(2n+1).
                let bound = 1.0 / ((2 * terms + 1) as f64 * s.sin());
                assert!((partial - exact).norm() <= bound, "s = {s}");
            }
        }
    }

    #[test]
    fn even_mode_values() {
        assert_eq!(half_lap_mode_even(0, 1.2, 3.0).unwrap(), c(0.0, 0.0));
        assert!((half_lap_mode_even(2, PI / 2.0, 1.0).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((half_lap_mode_even(-2, PI / 4.0, 2.0).unwrap() - c(0.0, -0.5)).norm() < 1e-15);
        assert!(half_lap_mode_even(3, 1.0, 1.0).is_err());
    }

    #[test]
    fn odd_mode_values() {
        let v = half_lap_mode_odd(1, PI / 2.0, 1.0).unwrap();
        assert!((v - c(0.0, 2.0 / PI)).norm() < 1e-15, "{v}");
        let v = half_lap_mode_odd(-1, PI / 2.0, 1.0).unwrap();
        assert!((v - c(0.0, -2.0 / PI)).norm() < 1e-15, "{v}");
        assert!(half_lap_mode_odd(4, 1.0, 1.0).is_err());
        assert!(half_lap_mode_odd(3, 0.0, 1.0).is_err());
        assert!(half_lap_mode_odd(3, 1.0, 0.0).is_err());
    }

    #[test]
    fn odd_mode_matches_truncated_series() {
        let v = half_lap_mode_odd(5, 0.7, 1.3).unwrap();
        let oracle = oracle_mode_series(5, 0.7, 1.3, 1_000_000).unwrap();
        assert!((v - oracle).norm() < 1e-9, "{v} vs {oracle}");
        for k in [-5i64, -3, -1, 1, 3, 5] {
            for &s in &[0.35, 1.5, 2.9] {
                let v = half_lap_mode_odd(k, s, 1.0).unwrap();
                let oracle = oracle_mode_series(k, s, 1.0, 1_000_000).unwrap();
                assert!((v - oracle).norm() < 1e-9, "k = {k}, s = {s}");
            }
        }
    }

    #[test]
    fn odd_mode_conjugation() {
        for k in (1..=31).step_by(2) {
            for &s in &interior_points(7) {
                for &l in &[0.5, 1.0, 2.0] {
                    let p = half_lap_mode_odd(k, s, l).unwrap();
                    let m = half_lap_mode_odd(-k, s, l).unwrap();
                    assert!((m - p.conj()).norm() < 1e-13, "k = {k}, s = {s}, L = {l}");
                }
            }
        }
    }

    #[test]
    fn two_routes_agree() {
        assert!((half_lap_mode_odd_2f1(1, PI / 2.0, 1.0).unwrap() - c(0.0, 2.0 / PI)).norm() < 1e-14);
        let a = half_lap_mode_odd_2f1(3, 1.1, 1.0).unwrap();
        let b = half_lap_mode_odd(3, 1.1, 1.0).unwrap();
        assert!((a - b).norm() < 1e-12);
        let p = half_lap_mode_odd_2f1(3, 2.0, 0.7).unwrap();
        let m = half_lap_mode_odd_2f1(-3, 2.0, 0.7).unwrap();
        assert!((m - p.conj()).norm() < 1e-12);
        for k in (-31..=31).filter(|k| k % 2 != 0) {
            for &s in &interior_points(20) {
                for &l in &[0.5, 1.0, 2.0] {
                    let a = half_lap_mode_odd(k, s, l).unwrap();
                    let b = half_lap_mode_odd_2f1(k, s, l).unwrap();
                    assert!((a - b).norm() < 1e-12, "k = {k}, s = {s}, L = {l}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn real_decomposition() {
        assert!(half_lap_mode_cos(1, PI / 2.0).unwrap().abs() < 1e-15);
        assert!((half_lap_mode_sin(1, PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        for k in (1..=31).step_by(2) {
            for &s in &interior_points(20) {
                let z = half_lap_mode_odd(k, s, 1.0).unwrap();
                let cs = half_lap_mode_cos(k, s).unwrap();
                let sn = half_lap_mode_sin(k, s).unwrap();
                assert!(
                    (c(cs, sn) - z).norm() < 1e-14 * k as f64 * (1.0 + z.norm()),
                    "k = {k}, s = {s}: {} vs {z}",
                    c(cs, sn)
                );
            }
        }
        assert!(half_lap_mode_cos(2, 1.0).is_err());
        assert!(half_lap_mode_sin(-1, 1.0).is_err());
    }

    #[test]
    fn inverse_sqrt_at_origin() {
        // u(x) = (1+x²)^{-1/2} is sin(s) at L = 1; its half Laplacian at x = 0 is 2/π.
        let v = half_lap_mode_sin(1, PI / 2.0).unwrap();
        assert!((v - crate::reference::ref_inv_sqrt(0.0)).abs() < 1e-15);
    }

    #[test]
    fn kernel_input_dispatch() {
        let even = ModeKernelInput::new(4, 0.9, 1.5).unwrap().evaluate();
        assert_eq!(even, half_lap_mode_even(4, 0.9, 1.5).unwrap());
        let odd = ModeKernelInput::new(-7, 0.9, 1.5).unwrap().evaluate();
        assert_eq!(odd, half_lap_mode_odd(-7, 0.9, 1.5).unwrap());
        assert!(ModeKernelInput::new(1, 3.5, 1.0).is_err());
    }

    #[test]
    fn log_cot_half_is_stable_near_endpoints() {
        for &s in &[1e-12, 1e-6, 0.5, PI - 1e-6] {
            let direct = (1.0 / (s / 2.0).tan()).ln();
            assert!((log_cot_half(s) - direct).abs() < 1e-12 * direct.abs().max(1.0), "s = {s}");
        }
    }
}
