//! Test functions with exact half Laplacians, the special functions they
//! need, and two brute-force oracles (truncated mode series and
//! principal-value quadrature) that are independent of the fast path.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rustfft::num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::extension::ExtensionKind;

/// `ln(x + √(x²+1))`, odd-reflected and written through `ln_1p` to keep
/// relative accuracy for small `|x|`.
pub fn argsinh(x: f64) -> f64 {
    if x < 0.0 {
        return -argsinh(-x);
    }
    if x > 1e8 {
        return (2.0 * x).ln();
    }
    (x + x * x / (1.0 + (1.0 + x * x).sqrt())).ln_1p()
}

/// Dawson's integral `D(x) = e^{-x²} ∫₀ˣ e^{t²} dt`.
///
/// Taylor series below `|x| = 0.2`, Rybicki's exponentially convergent sum
/// with step `h = 0.2` up to `|x| = 10`, asymptotic expansion beyond.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax < 0.2 {
        dawson_series(ax)
    } else if ax < 10.0 {
        dawson_rybicki(ax)
    } else {
        dawson_asymptotic(ax)
    };
    value.copysign(x)
}

fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term: f64 = 1.0;
    let mut sum = 0.0;
    let mut n = 0.0;
    while term.abs() > 1e-18 {
        sum += term;
        term *= -2.0 * x2 / (2.0 * n + 3.0);
        n += 1.0;
    }
    x * sum
}

fn dawson_rybicki(x: f64) -> f64 {
    const H: f64 = 0.2;
    // Terms with |m|·h beyond ~7 are below e^{-46}.
    const PAIRS: i64 = 18;
    let n0 = 2.0 * (x / (2.0 * H)).round();
    let xp = x - n0 * H;
    let mut sum = 0.0;
    for i in (1..=PAIRS).rev() {
        let m = (2 * i - 1) as f64;
        sum += (-(xp - m * H).powi(2)).exp() / (n0 + m) + (-(xp + m * H).powi(2)).exp() / (n0 - m);
    }
    sum / PI.sqrt()
}

fn dawson_asymptotic(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut n = 0.0;
    loop {
        sum += term;
        let next = term * (2.0 * n + 1.0) / two_x2;
        n += 1.0;
        if next < 1e-18 || next > term {
            break;
        }
        term = next;
    }
    sum / (2.0 * x)
}

pub fn quartic(x: f64) -> f64 {
    1.0 / (1.0 + x.powi(4))
}

/// Half Laplacian of `1/(1+x⁴)`: `(1-x²)(x⁴+4x²+1) / (√2 (1+x⁴)²)`.
pub fn ref_quartic(x: f64) -> f64 {
    if x.abs() <= 1.0 {
        let x2 = x * x;
        let x4 = x2 * x2;
        (1.0 - x2) * (x4 + 4.0 * x2 + 1.0) * FRAC_1_SQRT_2 / ((1.0 + x4) * (1.0 + x4))
    } else {
        // Same expression in y = 1/x, safe for huge |x|.
        let y2 = 1.0 / (x * x);
        let y4 = y2 * y2;
        y2 * (y2 - 1.0) * (1.0 + 4.0 * y2 + y4) * FRAC_1_SQRT_2 / ((y4 + 1.0) * (y4 + 1.0))
    }
}

pub fn inv_sqrt(x: f64) -> f64 {
    1.0 / x.hypot(1.0)
}

/// Half Laplacian of `(1+x²)^{-1/2}`.
pub fn ref_inv_sqrt(x: f64) -> f64 {
    let r = x.hypot(1.0);
    (2.0 * r - 2.0 * x * argsinh(x)) / (PI * r * r * r)
}

pub fn arctan(x: f64) -> f64 {
    x.atan()
}

/// Half Laplacian of `arctan(x)`: the Hilbert transform of `1/(1+x²)`,
/// which is `x/(1+x²)`.
pub fn ref_arctan(x: f64) -> f64 {
    if x.abs() <= 1.0 {
        x / (1.0 + x * x)
    } else {
        1.0 / (x + 1.0 / x)
    }
}

pub fn odd_sqrt(x: f64) -> f64 {
    x / x.hypot(1.0)
}

/// Half Laplacian of `x(1+x²)^{-1/2}`.
pub fn ref_odd_sqrt(x: f64) -> f64 {
    let r = x.hypot(1.0);
    (2.0 * x * r + 2.0 * argsinh(x)) / (PI * r * r * r)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Half Laplacian of `erf(x)`: `(4/π)·D(x)`.
pub fn ref_erf(x: f64) -> f64 {
    4.0 / PI * dawson(x)
}

/// A function on ℝ together with its exact half Laplacian.
#[derive(Debug, Clone)]
pub struct ReferencePair {
    pub name: &'static str,
    pub f: fn(f64) -> f64,
    pub exact: fn(f64) -> f64,
    pub recommended_extension: ExtensionKind,
}

pub fn reference_pairs() -> Vec<ReferencePair> {
    vec![
        ReferencePair { name: "quartic", f: quartic, exact: ref_quartic, recommended_extension: ExtensionKind::Even },
        ReferencePair { name: "inv_sqrt", f: inv_sqrt, exact: ref_inv_sqrt, recommended_extension: ExtensionKind::Odd },
        ReferencePair {
            name: "arctan",
            f: arctan,
            exact: ref_arctan,
            recommended_extension: ExtensionKind::SmoothClosedForm,
        },
        ReferencePair {
            name: "odd_sqrt",
            f: odd_sqrt,
            exact: ref_odd_sqrt,
            recommended_extension: ExtensionKind::Even,
        },
        ReferencePair { name: "erf", f: erf, exact: ref_erf, recommended_extension: ExtensionKind::Even },
    ]
}

pub fn reference_pair(name: &str) -> Option<ReferencePair> {
    reference_pairs().into_iter().find(|p| p.name == name)
}

/// Truncated bilateral series for an odd mode,
/// `(ik/(Lπ)) (2/(4-k²) - Σ_{0<|n|≤n_max} 4 sgn(n) e^{i2ns} / ((2n-k)(4-(2n-k)²)))`.
/// The truncation error decays like `1/n_max²`.
pub fn oracle_mode_series(k: i64, s: f64, map_scale: f64, n_max: u64) -> Result<Complex64> {
    if k % 2 == 0 {
        return Err(invalid(format!("mode index must be odd, got {k}")));
    }
    let kf = k as f64;
    let term = |n: f64| {
        let d = 2.0 * n - kf;
        4.0 / (d * (4.0 - d * d))
    };
    // Smallest terms first.
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        sum += Complex64::from_polar(term(nf), 2.0 * nf * s) - Complex64::from_polar(term(-nf), -2.0 * nf * s);
    }
    let prefactor = Complex64::new(0.0, kf / (map_scale * PI));
    Ok(prefactor * (2.0 / (4.0 - kf * kf) - sum))
}

/// Principal-value midpoint rule for
/// `(sin s / (Lπ)) ∫₀^π sin(η) u_s(η) / sin(s - η) dη`,
/// with `m` panels of width `π/m` laid out symmetrically about `η = s` so the
/// singular contributions cancel pairwise. No node ever coincides with `s`.
pub fn oracle_quadrature(u_s: impl Fn(f64) -> Complex64, s: f64, map_scale: f64, m: usize) -> Result<Complex64> {
    if !(s > 0.0 && s < PI) {
        return Err(invalid(format!("s must lie in (0, π), got {s}")));
    }
    if m == 0 {
        return Err(invalid("panel count must be positive"));
    }
    let h = PI / m as f64;
    let integrand = |eta: f64| eta.sin() * u_s(eta) / (s - eta).sin();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut j = 0usize;
    loop {
        let offset = (j as f64 + 0.5) * h;
        let (right, left) = (s + offset, s - offset);
        let right_in = right < PI;
        let left_in = left > 0.0;
        if !right_in && !left_in {
            break;
        }
        if right_in {
            sum += integrand(right);
        }
        if left_in {
            sum += integrand(left);
        }
        j += 1;
    }
    Ok(sum * h * s.sin() / (map_scale * PI))
}
