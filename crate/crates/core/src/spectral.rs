//! Grids on the mapped variable `s`, sample/coefficient containers and the
//! node-phase-corrected transforms between them.
//!
//! Nodes are the nonterminal points `s_j = π(2j+1)/(2N)`, so `x_j = L·cot(s_j)`
//! is finite everywhere. Two layouts exist:
//!
//! * half period: `N` nodes on `(0, π)`, expansion `u(s) = Σ û(k) e^{i2ks}`,
//!   `k ∈ [-⌊N/2⌋, ⌈N/2⌉-1]`;
//! * full period: `2N` nodes on `(0, 2π)`, expansion `u(s) = Σ û(k) e^{iks}`,
//!   `k ∈ [-N, N-1]`.
//!
//! In both cases a length-`P` DFT of the samples, multiplied by `e^{-iπk/P}/P`,
//! gives the true coefficients; the phase accounts for the half-cell offset of
//! the nodes.

use std::f64::consts::PI;
use std::ops::Index;

use rustfft::num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::fft::{self, Transforms};

/// Inputs whose imaginary parts stay below this fraction of the real scale are
/// treated as real, and outputs are projected accordingly.
pub const REAL_INPUT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    map_scale: f64,
    full_period: bool,
}

impl GridSpec {
    pub fn new(n: usize, map_scale: f64, full_period: bool) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("grid needs at least 2 modes, got n = {n}")));
        }
        if !(map_scale > 0.0 && map_scale.is_finite()) {
            return Err(invalid(format!("map scale must be positive and finite, got {map_scale}")));
        }
        Ok(Self { n, map_scale, full_period })
    }

    pub fn half_period(n: usize, map_scale: f64) -> Result<Self> {
        Self::new(n, map_scale, false)
    }

    pub fn full_period(n: usize, map_scale: f64) -> Result<Self> {
        Self::new(n, map_scale, true)
    }

    /// Number of modes `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The map scale `L` in `x = L·cot(s)`.
    pub fn map_scale(&self) -> f64 {
        self.map_scale
    }

    pub fn is_full_period(&self) -> bool {
        self.full_period
    }

    /// Number of nodes: `N` on the half period, `2N` on the full period.
    pub fn len(&self) -> usize {
        if self.full_period {
            2 * self.n
        } else {
            self.n
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same `N` and `L` restricted to `(0, π)`.
    pub fn to_half_period(&self) -> Self {
        Self { full_period: false, ..*self }
    }

    pub fn to_full_period(&self) -> Self {
        Self { full_period: true, ..*self }
    }

    /// `s_j = π(2j+1)/(2N)`.
    pub fn node(&self, j: usize) -> f64 {
        PI * (2 * j + 1) as f64 / (2 * self.n) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.node(j)).collect()
    }

    /// `x_j = L·cot(s_j)`; strictly decreasing over the half period.
    pub fn x_node(&self, j: usize) -> f64 {
        let s = self.node(j);
        self.map_scale * s.cos() / s.sin()
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.x_node(j)).collect()
    }

    /// Signed coefficient range `(k_min, k_max)` for this layout.
    pub fn coeff_range(&self) -> (i64, i64) {
        let p = self.len() as i64;
        (-(p / 2), (p + 1) / 2 - 1)
    }
}

/// Same as [`GridSpec::new`].
pub fn make_grid(n: usize, map_scale: f64, full_period: bool) -> Result<GridSpec> {
    GridSpec::new(n, map_scale, full_period)
}

/// Complex function values at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    values: Vec<Complex64>,
    grid: GridSpec,
}

impl SampleVector {
    pub fn new(values: Vec<Complex64>, grid: GridSpec) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!("expected {} samples for this grid, got {}", grid.len(), values.len())));
        }
        if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(invalid(format!("sample {j} is not finite: {}", values[j])));
        }
        Ok(Self { values, grid })
    }

    pub fn from_real(values: &[f64], grid: GridSpec) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect(), grid)
    }

    /// Samples `f(s_j)` over every node of `grid`.
    pub fn from_fn_s(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid.nodes().into_iter().map(f).collect(), grid)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// True when `max|Im| ≤ 1e-14·max(1, max|Re|)`.
    pub fn is_real(&self) -> bool {
        let (max_re, max_im) =
            self.values.iter().fold((0.0f64, 0.0f64), |(r, i), v| (r.max(v.re.abs()), i.max(v.im.abs())));
        max_im <= REAL_INPUT_TOLERANCE * max_re.max(1.0)
    }
}

/// Fourier coefficients over a contiguous signed index range.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    k_min: i64,
    coeffs: Vec<Complex64>,
}

impl SpectralCoeffs {
    pub fn new(k_min: i64, coeffs: Vec<Complex64>) -> Self {
        Self { k_min, coeffs }
    }

    pub fn zeros(k_min: i64, k_max: i64) -> Self {
        let len = (k_max - k_min + 1).max(0) as usize;
        Self { k_min, coeffs: vec![Complex64::new(0.0, 0.0); len] }
    }

    /// Zero coefficients over the index range that `grid` expects.
    pub fn zeros_for(grid: &GridSpec) -> Self {
        let (lo, hi) = grid.coeff_range();
        Self::zeros(lo, hi)
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, k: i64) -> Option<Complex64> {
        if k < self.k_min {
            return None;
        }
        self.coeffs.get((k - self.k_min) as usize).copied()
    }

    /// Sets `û(k)`; panics when `k` lies outside the range.
    pub fn set(&mut self, k: i64, value: Complex64) {
        assert!(k >= self.k_min && k <= self.k_max(), "index {k} outside [{}, {}]", self.k_min, self.k_max());
        self.coeffs[(k - self.k_min) as usize] = value;
    }

    /// `(k, û(k))` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &c)| (self.k_min + i as i64, c))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }
}

impl Index<i64> for SpectralCoeffs {
    type Output = Complex64;

    fn index(&self, k: i64) -> &Complex64 {
        &self.coeffs[(k - self.k_min) as usize]
    }
}

/// Magnitude threshold below which coefficients are zeroed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrasnyThreshold(f64);

impl KrasnyThreshold {
    pub const MACHINE_EPSILON: f64 = f64::EPSILON;

    pub fn new(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(invalid(format!("Krasny threshold must be finite and >= 0, got {epsilon}")));
        }
        Ok(Self(epsilon))
    }

    /// A threshold of zero: the filter becomes the identity.
    pub fn disabled() -> Self {
        Self(0.0)
    }

    pub fn epsilon(&self) -> f64 {
        self.0
    }
}

impl Default for KrasnyThreshold {
    fn default() -> Self {
        Self(Self::MACHINE_EPSILON)
    }
}

/// `e^{iπk/P}`, the half-cell phase of mode `k` on a `P`-node grid.
#[inline]
pub(crate) fn node_phase(k: i64, period: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI * k as f64 / period as f64)
}

/// Fourier coefficients of `samples`, Krasny-filtered at the default threshold.
pub fn forward_coeffs(samples: &SampleVector) -> SpectralCoeffs {
    forward_coeffs_with(samples, KrasnyThreshold::default())
}

pub fn forward_coeffs_with(samples: &SampleVector, threshold: KrasnyThreshold) -> SpectralCoeffs {
    forward_coeffs_in(&mut Transforms::new(), samples, threshold)
}

pub(crate) fn forward_coeffs_in(
    fft: &mut Transforms,
    samples: &SampleVector,
    threshold: KrasnyThreshold,
) -> SpectralCoeffs {
    let grid = samples.grid();
    let p = grid.len();
    let (k_min, k_max) = grid.coeff_range();

    let mut bins = samples.values().to_vec();
    fft.forward(&mut bins);

    let scale = 1.0 / p as f64;
    let coeffs = (k_min..=k_max).map(|k| bins[fft::wrap(k, p)] * node_phase(-k, p) * scale).collect();
    krasny_filter(SpectralCoeffs::new(k_min, coeffs), threshold)
}

/// Evaluates the truncated expansion at the nodes of `grid`.
pub fn inverse_samples(coeffs: &SpectralCoeffs, grid: &GridSpec) -> Result<SampleVector> {
    let expected = grid.coeff_range();
    if (coeffs.k_min(), coeffs.k_max()) != expected {
        return Err(invalid(format!(
            "coefficient range [{}, {}] does not match grid range [{}, {}]",
            coeffs.k_min(),
            coeffs.k_max(),
            expected.0,
            expected.1
        )));
    }
    let p = grid.len();
    let mut bins = vec![Complex64::new(0.0, 0.0); p];
    for (k, c) in coeffs.iter() {
        bins[fft::wrap(k, p)] = c * node_phase(k, p);
    }
    Transforms::new().inverse(&mut bins);
    SampleVector::new(bins, *grid)
}

/// `Σ_k d_k e^{i2ks_j}` at the `n` half-period nodes, for any finite set of
/// integer `k`: terms are folded onto `k mod n` and one inverse DFT is taken.
pub(crate) fn sum_double_modes(
    fft: &mut Transforms,
    n: usize,
    terms: impl IntoIterator<Item = (i64, Complex64)>,
) -> Vec<Complex64> {
    let mut bins = vec![Complex64::new(0.0, 0.0); n];
    for (k, d) in terms {
        bins[fft::wrap(k, n)] += d * node_phase(k, n);
    }
    fft.inverse(&mut bins);
    bins
}

/// Zeroes every coefficient with `|û(k)| < ε`.
pub fn krasny_filter(mut coeffs: SpectralCoeffs, threshold: KrasnyThreshold) -> SpectralCoeffs {
    let eps = threshold.epsilon();
    for c in coeffs.coeffs.iter_mut() {
        if c.norm() < eps {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    coeffs
}
