//! The half Laplacian `(-Δ)^{1/2}` on the real line, computed spectrally.
//!
//! Functions on `ℝ` are pulled back to `s ∈ (0, π)` through `x = L cot s`.
//! In that variable the operator acts on each Fourier mode `e^{iks}` by an
//! explicit formula, diagonal for even `k` and a finite sum for odd `k`, so a
//! function sampled at `N` mapped nodes is handled with FFTs in
//! `O(N log N)`.
//!
//! ```
//! use halflap::{apply_to_function, ExtensionKind};
//!
//! let f = |x: f64| 1.0 / (1.0 + x.powi(4));
//! let (x, out) = apply_to_function(f, 256, 1.1, &ExtensionKind::Even).unwrap();
//! let exact = halflap::reference::ref_quartic(x[17]);
//! assert!((out.real_values()[17] - exact).abs() < 1e-12);
//! ```

pub mod driver;
pub mod error;
pub mod extension;
pub mod fastconv;
mod fft;
pub mod kernel;
pub mod reference;
pub mod spectral;

pub use driver::{
    apply_to_function, apply_to_function_with, half_laplacian_full, half_laplacian_full_with, half_laplacian_periodic,
    half_laplacian_periodic_with, DriverConfig, HalfLapResult,
};
pub use error::{HalfLapError, Result};
pub use extension::{BoundaryData, BoundarySource, ExtensionKind};
pub use kernel::ModeSign;
pub use rustfft::num_complex::Complex64;
pub use spectral::{
    forward_coeffs, inverse_samples, make_grid, GridSpec, KrasnyThreshold, SampleVector, SpectralCoeffs,
};
