//! Error sweeps over `(N, L)` for a named reference pair.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use halflap::reference::ReferencePair;
use halflap::{apply_to_function_with, DriverConfig, ExtensionKind};
use rayon::prelude::*;

use crate::apply::driver_config;
use crate::args::SweepArgs;
use crate::error::{usage, CliError, Result};
use crate::input::{fmt_f64, lookup_function, open_output, parse_l_list, parse_l_range, parse_n_list, ExtensionTag};

pub const CSV_HEADER: [&str; 6] = ["function", "N", "L", "extension", "max_error", "runtime_ms"];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub pair: ReferencePair,
    pub n_list: Vec<usize>,
    pub l_list: Vec<f64>,
    pub extension: ExtensionKind,
    pub driver: DriverConfig,
}

impl SweepConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let pair = lookup_function(&args.function)?;
        let l_list = match (&args.l, &args.l_range) {
            (Some(list), None) => parse_l_list(list)?,
            (None, Some(range)) => parse_l_range(range)?,
            _ => return Err(usage("give exactly one of --l and --l-range")),
        };
        let extension =
            args.extension.map(|t| t.to_kind(pair.name)).unwrap_or_else(|| pair.recommended_extension.clone());
        Ok(Self { n_list: parse_n_list(&args.n)?, l_list, extension, driver: driver_config(args.krasny_eps)?, pair })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub function: &'static str,
    pub n: usize,
    pub l: f64,
    pub extension: ExtensionTag,
    /// Discrete L∞ error, or the failure message for this cell.
    pub max_error: std::result::Result<f64, String>,
    pub runtime_ms: f64,
}

fn run_cell(config: &SweepConfig, n: usize, l: f64) -> ErrorRecord {
    let start = Instant::now();
    let max_error = apply_to_function_with(config.pair.f, n, l, &config.extension, &config.driver)
        .map(|(x, result)| {
            let exact = config.pair.exact;
            x.iter().zip(result.real_values()).map(|(&xj, v)| (exact(xj) - v).abs()).fold(0.0, |acc: f64, e| {
                if e.is_nan() || acc.is_nan() {
                    f64::NAN
                } else {
                    acc.max(e)
                }
            })
        })
        .map_err(|e| e.to_string());
    ErrorRecord {
        function: config.pair.name,
        n,
        l,
        extension: ExtensionTag::of_kind(&config.extension),
        max_error,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// One record per `(N, L)`, `N` outer and `L` inner, whatever the thread count.
pub fn run_sweep(config: &SweepConfig, threads: Option<usize>) -> Result<Vec<ErrorRecord>> {
    let cells: Vec<(usize, f64)> =
        config.n_list.iter().flat_map(|&n| config.l_list.iter().map(move |&l| (n, l))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| usage(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(|| cells.par_iter().map(|&(n, l)| run_cell(config, n, l)).collect()))
}

fn error_field(record: &ErrorRecord) -> String {
    match &record.max_error {
        Ok(e) if e.is_nan() => "nan".to_string(),
        Ok(e) if e.is_infinite() => "inf".to_string(),
        Ok(e) => fmt_f64(*e),
        Err(_) => "nan".to_string(),
    }
}

pub fn write_csv(out: impl Write, records: &[ErrorRecord], with_timing: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let runtime = if with_timing { fmt_f64(r.runtime_ms) } else { fmt_f64(0.0) };
        w.write_record([
            r.function.to_string(),
            r.n.to_string(),
            fmt_f64(r.l),
            r.extension.name().to_string(),
            error_field(r),
            runtime,
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Error-vs-L blocks, one per N, separated by two blank lines (gnuplot `index`).
pub fn write_plot_data(mut out: impl Write, records: &[ErrorRecord]) -> std::io::Result<()> {
    let mut current = None;
    for r in records {
        if current != Some(r.n) {
            if current.is_some() {
                writeln!(out, "\n")?;
            }
            writeln!(out, "# {} {} N={}", r.function, r.extension.name(), r.n)?;
            writeln!(out, "# L max_error")?;
            current = Some(r.n);
        }
        writeln!(out, "{} {}", fmt_f64(r.l), error_field(r))?;
    }
    out.flush()
}

pub fn run(args: &SweepArgs) -> Result<()> {
    let config = SweepConfig::from_args(args)?;
    let records = run_sweep(&config, args.threads)?;
    for r in &records {
        if let Err(msg) = &r.max_error {
            eprintln!("warning: {} N={} L={}: {msg}", r.function, r.n, r.l);
        }
    }
    let target = args.output.as_deref().unwrap_or(Path::new("-"));
    let out = open_output(Some(target))?;
    write_csv(out, &records, !args.omit_timing).map_err(|e| CliError::io(target, e))?;
    if let Some(path) = &args.plot_data {
        let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        write_plot_data(std::io::BufWriter::new(file), &records).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}
