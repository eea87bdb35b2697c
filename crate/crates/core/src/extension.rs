//! Extensions of `u(s)` from `(0, π)` to `(0, 2π)`.
//!
//! A function that is not π-periodic in `s` has to be continued onto the
//! second half-period before the full-period driver can see it. Even and odd
//! reflections about `s = π` are exact for functions with the matching symmetry
//! but introduce a derivative jump otherwise. The smooth variants use a
//! trigonometric polynomial of degree 5 that matches `u` and its first four
//! derivatives at both ends, giving a C⁴ periodic function.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix5, Vector5};
use rustfft::num_complex::Complex64;

use crate::error::{invalid, HalfLapError, Result};
use crate::spectral::{GridSpec, SampleVector};

/// How the second half-period is filled in.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtensionKind {
    /// The input is already π-periodic; use the periodic driver.
    None,
    Even,
    Odd,
    /// The closed-form C⁴ continuation worked out for `arctan(x)`.
    SmoothClosedForm,
    SmoothGeneric(BoundarySource),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySource {
    Exact(BoundaryData),
    /// One-sided finite differences on the samples themselves; less accurate.
    Estimated,
}

/// `u, u', u'', u''', u''''` in `s` at `s = π` and at `s = 2π` (equivalently `s = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub at_pi: [f64; 5],
    pub at_two_pi: [f64; 5],
}

impl BoundaryData {
    pub fn new(at_pi: [f64; 5], at_two_pi: [f64; 5]) -> Result<Self> {
        if at_pi.iter().chain(&at_two_pi).any(|v| !v.is_finite()) {
            return Err(invalid("boundary data must be finite"));
        }
        Ok(Self { at_pi, at_two_pi })
    }

    /// Data for `u(s) = arctan(L cot s)`, continued so that `u(2π) = π/2`.
    pub fn arctan(map_scale: f64) -> Self {
        let l = map_scale;
        let third = -2.0 / l + 2.0 / (l * l * l);
        Self { at_pi: [-PI / 2.0, -1.0 / l, 0.0, third, 0.0], at_two_pi: [PI / 2.0, -1.0 / l, 0.0, third, 0.0] }
    }

    /// Fits a quartic through the five nodes nearest each end of a
    /// half-period grid and reads the derivatives off its coefficients.
    pub fn estimate_from_samples(samples: &SampleVector) -> Result<Self> {
        let grid = samples.grid();
        if grid.is_full_period() {
            return Err(invalid("boundary estimation expects half-period samples"));
        }
        let n = grid.n();
        if n < 5 {
            return Err(invalid(format!("boundary estimation needs at least 5 nodes, got {n}")));
        }
        if !samples.is_real() {
            return Err(invalid("boundary estimation expects real samples"));
        }
        let v = samples.real_parts();
        let h = PI / n as f64;
        // Node offsets from the end point: (i+½)h towards the interior.
        let offsets: Vec<f64> = (0..5).map(|i| (i as f64 + 0.5) * h).collect();
        let near_zero: Vec<f64> = (0..5).map(|i| v[i]).collect();
        let near_pi: Vec<f64> = (0..5).map(|i| v[n - 1 - i]).collect();
        let neg: Vec<f64> = offsets.iter().map(|t| -t).collect();
        Self::new(quartic_derivatives(&neg, &near_pi)?, quartic_derivatives(&offsets, &near_zero)?)
    }
}

fn quartic_derivatives(t: &[f64], y: &[f64]) -> Result<[f64; 5]> {
    let vander = Matrix5::from_fn(|r, c| t[r].powi(c as i32));
    let rhs = Vector5::from_column_slice(y);
    let coeffs = vander.lu().solve(&rhs).ok_or(HalfLapError::SingularSystem { condition: f64::INFINITY })?;
    let factorial = [1.0, 1.0, 2.0, 6.0, 24.0];
    Ok(std::array::from_fn(|m| coeffs[m] * factorial[m]))
}

/// `c + Σ_{k=1}^{5} (α_k cos ks + β_k sin ks)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigInterpolant {
    pub constant: f64,
    pub alpha: [f64; 5],
    pub beta: [f64; 5],
    /// Ratio of extreme nonzero singular values of the boundary system.
    pub condition: f64,
}

impl TrigInterpolant {
    pub fn eval(&self, s: f64) -> f64 {
        (1..=5).fold(self.constant, |acc, k| {
            let ks = k as f64 * s;
            acc + self.alpha[k - 1] * ks.cos() + self.beta[k - 1] * ks.sin()
        })
    }
}

/// `cos(qπ/2)` and `sin(qπ/2)` exactly.
fn quarter_turn(q: usize) -> (f64, f64) {
    match q % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

/// Solves for the degree-5 interpolant matching `data`.
///
/// The ten conditions split into a block on `α_0, α_2, α_4` (three equations)
/// and one on `α_1, α_3, α_5, β_1..β_5`; with only `α_1..α_5, β_1..β_5` the
/// first block would be overdetermined, so a constant term is included and the
/// minimum-norm solution of the resulting 10×11 system is returned.
pub fn smooth_extension_coefficients(data: &BoundaryData) -> Result<TrigInterpolant> {
    let mut a = DMatrix::<f64>::zeros(10, 11);
    let mut b = DVector::<f64>::zeros(10);
    for (end, (values, turns)) in [(&data.at_pi, 2usize), (&data.at_two_pi, 4usize)].into_iter().enumerate() {
        for (m, &value) in values.iter().enumerate() {
            let row = 5 * end + m;
            b[row] = value;
            if m == 0 {
                a[(row, 0)] = 1.0;
            }
            for k in 1..=5usize {
                // d^m/ds^m cos(ks) = k^m cos(ks + mπ/2), and ks at the ends is kπ or 2kπ.
                let (cos, sin) = quarter_turn(turns * k + m);
                let km = (k as f64).powi(m as i32);
                a[(row, k)] = km * cos;
                a[(row, 5 + k)] = km * sin;
            }
        }
    }
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if smin.is_nan() || smin <= 1e-12 * smax {
        return Err(HalfLapError::SingularSystem { condition });
    }
    let x = svd.solve(&b, 1e-12 * smax).map_err(|_| HalfLapError::SingularSystem { condition })?;
    let residual = (&a * &x - &b).amax();
    if residual > 1e-9 * (1.0 + b.amax()) {
        return Err(HalfLapError::SingularSystem { condition });
    }
    Ok(TrigInterpolant {
        constant: x[0],
        alpha: std::array::from_fn(|i| x[1 + i]),
        beta: std::array::from_fn(|i| x[6 + i]),
        condition,
    })
}

fn check_half(samples: &SampleVector) -> Result<()> {
    if samples.grid().is_full_period() {
        return Err(invalid("extension expects half-period samples"));
    }
    Ok(())
}

fn extend_with(samples: &SampleVector, tail: impl Fn(usize, f64) -> Complex64) -> Result<SampleVector> {
    check_half(samples)?;
    let grid = samples.grid().to_full_period();
    let n = grid.n();
    let mut values = samples.values().to_vec();
    values.extend((n..2 * n).map(|j| tail(j, grid.node(j))));
    SampleVector::new(values, grid)
}

/// `u(π+s) = u(π-s)`: `out[j] = in[2N-1-j]` for `j ≥ N`.
pub fn extend_even(samples: &SampleVector) -> Result<SampleVector> {
    let v = samples.values();
    let n = v.len();
    extend_with(samples, |j, _| v[2 * n - 1 - j])
}

/// `u(π+s) = -u(π-s)`.
pub fn extend_odd(samples: &SampleVector) -> Result<SampleVector> {
    let v = samples.values();
    let n = v.len();
    extend_with(samples, |j, _| -v[2 * n - 1 - j])
}

/// The second-half formula of the smooth arctan continuation.
pub fn arctan_tail(map_scale: f64, s: f64) -> f64 {
    let l = map_scale;
    let l3 = l * l * l;
    75.0 * PI / 128.0 * s.cos() + (-3.0 / (4.0 * l) + 1.0 / (12.0 * l3)) * (2.0 * s).sin()
        - 25.0 * PI / 256.0 * (3.0 * s).cos()
        + (1.0 / (8.0 * l) - 1.0 / (24.0 * l3)) * (4.0 * s).sin()
        + 3.0 * PI / 256.0 * (5.0 * s).cos()
}

/// `arctan(L cot s)` on the first half-period, smoothly continued on the second.
pub fn extend_smooth_arctan(map_scale: f64, grid: &GridSpec) -> Result<SampleVector> {
    if !(map_scale.is_finite() && map_scale > 0.0) {
        return Err(invalid(format!("map scale L must be positive and finite, got {map_scale}")));
    }
    if !grid.is_full_period() {
        return Err(invalid("extend_smooth_arctan fills a full-period grid"));
    }
    SampleVector::from_fn_s(*grid, |s| {
        let value = if s < PI { (map_scale * s.cos() / s.sin()).atan() } else { arctan_tail(map_scale, s) };
        Complex64::new(value, 0.0)
    })
}

/// Keeps the given half and fills the second with the closed-form arctan tail.
pub fn extend_arctan_tail(samples: &SampleVector) -> Result<SampleVector> {
    let l = samples.grid().map_scale();
    extend_with(samples, |_, s| Complex64::new(arctan_tail(l, s), 0.0))
}

/// Keeps the given half and fills the second with the interpolant for `boundary`.
pub fn extend_smooth_generic(samples: &SampleVector, boundary: &BoundaryData) -> Result<SampleVector> {
    let interp = smooth_extension_coefficients(boundary)?;
    extend_with(samples, |_, s| Complex64::new(interp.eval(s), 0.0))
}

/// Applies `kind` to half-period samples. `None` is rejected: there is nothing to extend.
pub fn extend(samples: &SampleVector, kind: &ExtensionKind) -> Result<SampleVector> {
    match kind {
        ExtensionKind::None => Err(invalid("no extension requested")),
        ExtensionKind::Even => extend_even(samples),
        ExtensionKind::Odd => extend_odd(samples),
        ExtensionKind::SmoothClosedForm => extend_arctan_tail(samples),
        ExtensionKind::SmoothGeneric(BoundarySource::Exact(data)) => extend_smooth_generic(samples, data),
        ExtensionKind::SmoothGeneric(BoundarySource::Estimated) => {
            extend_smooth_generic(samples, &BoundaryData::estimate_from_samples(samples)?)
        }
    }
}

/// The first `N` entries of full-period samples.
pub fn restrict_to_half(samples: &SampleVector) -> Result<SampleVector> {
    let grid = samples.grid();
    if !grid.is_full_period() {
        return Err(invalid("restriction expects full-period samples"));
    }
    SampleVector::new(samples.values()[..grid.n()].to_vec(), grid.to_half_period())
}
