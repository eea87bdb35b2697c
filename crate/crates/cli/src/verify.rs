//! Oracle suites: every fast path against an independent slow one.

use std::f64::consts::PI;
use std::time::Instant;

use halflap::fastconv::{circular_convolve, direct_convolve, odd_mode_combination, ConvSeq, OddCombinationSpec};
use halflap::kernel::{
    gauss_2f1_odd_finite, gauss_2f1_series, half_lap_mode_cos, half_lap_mode_even, half_lap_mode_odd,
    half_lap_mode_odd_2f1, half_lap_mode_sin, HypergeomParams,
};
use halflap::reference::{oracle_mode_series, oracle_quadrature, reference_pair};
use halflap::{apply_to_function, Complex64, ExtensionKind, GridSpec, ModeSign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{Level, VerifyArgs};
use crate::error::{usage, CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub elapsed_ms: f64,
}

fn random_complex(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn mode_kernel(k: i64, s: f64, l: f64) -> Complex64 {
    if k % 2 == 0 {
        half_lap_mode_even(k, s, l).unwrap()
    } else {
        half_lap_mode_odd(k, s, l).unwrap()
    }
}

fn convolution(level: Level, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let periods: &[usize] = match level {
        Level::Fast => &[3, 8, 17, 64, 257],
        Level::Full => &[3, 8, 17, 64, 257, 1021, 1024],
    };
    periods
        .iter()
        .map(|&p| {
            let b = ConvSeq::new(random_complex(&mut rng, p)).unwrap();
            let c = ConvSeq::new(random_complex(&mut rng, p)).unwrap();
            let fast = circular_convolve(&b, &c).unwrap();
            let slow = direct_convolve(&b, &c).unwrap();
            let scale = slow.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
            fast.values().iter().zip(slow.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
        })
        .fold(0.0, f64::max)
}

fn combination(level: Level, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let degrees: &[usize] = match level {
        Level::Fast => &[0, 1, 5, 31],
        Level::Full => &[0, 1, 2, 5, 17, 31],
    };
    let mut worst: f64 = 0.0;
    for &m in degrees {
        let grid = GridSpec::half_period(2 * m + 9, 1.0).unwrap();
        for sign in [ModeSign::Positive, ModeSign::Negative] {
            let a = random_complex(&mut rng, m + 1);
            let spec = OddCombinationSpec::with_min_period(a.clone(), sign, 1.0).unwrap();
            let out = odd_mode_combination(&spec, &grid).unwrap();
            let sigma = sign.as_f64() as i64;
            for (j, s) in grid.nodes().into_iter().enumerate() {
                let direct: Complex64 = a
                    .iter()
                    .enumerate()
                    .map(|(l, &al)| al * half_lap_mode_odd(sigma * (2 * l as i64 + 1), s, 1.0).unwrap())
                    .sum();
                worst = worst.max((out.values()[j] - direct).norm() / direct.norm().max(1.0));
            }
        }
    }
    worst
}

fn mode_series(level: Level) -> f64 {
    let n_max = match level {
        Level::Fast => 10_000,
        Level::Full => 1_000_000,
    };
    let cases: Vec<(i64, f64)> =
        [1i64, -1, 3, -3, 7, -7, 15, -15].iter().flat_map(|&k| [0.3, 1.2, 2.6].map(|s| (k, s))).collect();
    cases
        .par_iter()
        .map(|&(k, s)| (oracle_mode_series(k, s, 1.0, n_max).unwrap() - half_lap_mode_odd(k, s, 1.0).unwrap()).norm())
        .reduce(|| 0.0, f64::max)
}

fn quadrature(level: Level) -> f64 {
    let panels = match level {
        Level::Fast => 20_000,
        Level::Full => 400_000,
    };
    let cases: Vec<(i64, f64)> = [1i64, 2, 3, -3, 4, -5].iter().flat_map(|&k| [0.7, 1.9].map(|s| (k, s))).collect();
    cases
        .par_iter()
        .map(|&(k, s)| {
            let kf = k as f64;
            let du = |eta: f64| Complex64::new(0.0, kf) * Complex64::from_polar(1.0, kf * eta);
            (oracle_quadrature(du, s, 1.0, panels).unwrap() - mode_kernel(k, s, 1.0)).norm()
        })
        .reduce(|| 0.0, f64::max)
}

fn hypergeometric(level: Level) -> f64 {
    let k_max = match level {
        Level::Fast => 15,
        Level::Full => 31,
    };
    let mut worst: f64 = 0.0;
    for k in (1..=k_max).step_by(2) {
        for i in 1..=12 {
            let s = PI * i as f64 / 13.0;
            for kk in [k, -k] {
                let a = half_lap_mode_odd(kk, s, 1.0).unwrap();
                let b = half_lap_mode_odd_2f1(kk, s, 1.0).unwrap();
                worst = worst.max((a - b).norm() / a.norm().max(1.0));
            }
            let trig = Complex64::new(half_lap_mode_cos(k, s).unwrap(), half_lap_mode_sin(k, s).unwrap());
            let direct = half_lap_mode_odd(k, s, 1.0).unwrap();
            worst = worst.max((trig - direct).norm() / direct.norm().max(1.0));
        }
    }
    worst
}

/// The raw series against its finite-sum reduction; terms decay like `n^{-3}` on the unit circle.
fn series_2f1() -> f64 {
    let cases: Vec<(i64, f64)> = [1i64, -1, 3, -3, 5].iter().flat_map(|&k| [0.6, 1.7].map(|s| (k, s))).collect();
    cases
        .par_iter()
        .map(|&(k, s)| {
            let kf = k as f64;
            let z = Complex64::from_polar(1.0, 2.0 * s);
            let p = HypergeomParams::real(1.0, -kf / 2.0 - 1.0, -kf / 2.0 + 2.0, z).unwrap();
            let series = gauss_2f1_series(&p, 1e-16, 2_000_000).unwrap();
            let finite = gauss_2f1_odd_finite(k, s).unwrap();
            (series - finite).norm() / finite.norm().max(1.0)
        })
        .reduce(|| 0.0, f64::max)
}

fn drivers() -> f64 {
    // Single-mode inputs are exact at every N; the quartic needs N large enough to converge.
    let cases = [
        ("inv_sqrt", ExtensionKind::Odd, 1.0, &[4usize, 16, 64, 1031][..]),
        ("odd_sqrt", ExtensionKind::Even, 1.0, &[4, 16, 64, 1031][..]),
        ("quartic", ExtensionKind::Even, 1.1, &[1024, 1031][..]),
        ("quartic", ExtensionKind::None, 1.1, &[1024, 1031][..]),
    ];
    let mut worst: f64 = 0.0;
    for (name, ext, l, sizes) in cases {
        let pair = reference_pair(name).unwrap();
        for &n in sizes {
            let (x, out) = apply_to_function(pair.f, n, l, &ext).unwrap();
            let err = x.iter().zip(out.real_values()).map(|(&xj, v)| (v - (pair.exact)(xj)).abs()).fold(0.0, f64::max);
            worst = worst.max(err);
        }
    }
    worst
}

fn timed(name: &'static str, tolerance: f64, f: impl FnOnce() -> f64) -> SuiteResult {
    let start = Instant::now();
    let worst = f();
    SuiteResult { name, passed: worst <= tolerance, worst, tolerance, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }
}

pub fn run_suites(level: Level, seed: u64) -> Vec<SuiteResult> {
    let quad_tol = match level {
        Level::Fast => 1e-7,
        Level::Full => 1e-9,
    };
    vec![
        timed("circular vs direct convolution", 1e-13, || convolution(level, seed)),
        timed("odd combination vs kernel sum", 1e-12, || combination(level, seed)),
        timed("mode series vs closed form", 1e-9, || mode_series(level)),
        timed("quadrature vs closed form", quad_tol, || quadrature(level)),
        timed("2F1 and trigonometric forms", 1e-12, || hypergeometric(level)),
        timed("2F1 series vs finite form", 1e-10, series_2f1),
        timed("drivers vs exact references", 1e-12, drivers),
    ]
}

pub fn run(args: &VerifyArgs) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = args.threads {
        if t == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| usage(format!("cannot start thread pool: {e}")))?;
    let results = pool.install(|| run_suites(args.level, args.seed));
    println!("{:<34} {:<6} {:>12} {:>12} {:>10}", "suite", "result", "worst", "tolerance", "ms");
    for r in &results {
        println!(
            "{:<34} {:<6} {:>12.3e} {:>12.1e} {:>10.1}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.worst,
            r.tolerance,
            r.elapsed_ms
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    Ok(())
}
