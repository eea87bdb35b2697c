//! Wall-clock timing of the drivers as `N` grows.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use halflap::apply_to_function_with;

use crate::apply::driver_config;
use crate::args::BenchArgs;
use crate::error::{usage, CliError, Result};
use crate::input::{fmt_f64, lookup_function, open_output, parse_n_list, ExtensionTag};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub median_ms: f64,
    pub mean_ms: f64,
    pub std_ms: f64,
    pub min_ms: f64,
    /// `min_ms` over the previous row's `min_ms`; the minimum is the least noisy statistic.
    pub ratio: Option<f64>,
}

fn summarize(n: usize, mut times: Vec<f64>) -> BenchRecord {
    times.sort_by(f64::total_cmp);
    let len = times.len() as f64;
    let mid = times.len() / 2;
    let median_ms = if times.len().is_multiple_of(2) { 0.5 * (times[mid - 1] + times[mid]) } else { times[mid] };
    let mean_ms = times.iter().sum::<f64>() / len;
    let var =
        if times.len() > 1 { times.iter().map(|t| (t - mean_ms).powi(2)).sum::<f64>() / (len - 1.0) } else { 0.0 };
    BenchRecord { n, median_ms, mean_ms, std_ms: var.sqrt(), min_ms: times[0], ratio: None }
}

pub fn run_bench(args: &BenchArgs) -> Result<(ExtensionTag, Vec<BenchRecord>)> {
    if args.repeats == 0 {
        return Err(usage("--repeats must be at least 1"));
    }
    let pair = lookup_function(&args.function)?;
    let ext = args.extension.map(|t| t.to_kind(pair.name)).unwrap_or_else(|| pair.recommended_extension.clone());
    let config = driver_config(args.krasny_eps)?;
    let mut records: Vec<BenchRecord> = Vec::new();
    for n in parse_n_list(&args.n)? {
        // One untimed run to warm caches and FFT plans.
        apply_to_function_with(pair.f, n, args.l, &ext, &config)?;
        let mut times = Vec::with_capacity(args.repeats);
        for _ in 0..args.repeats {
            let start = Instant::now();
            apply_to_function_with(pair.f, n, args.l, &ext, &config)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
        }
        let mut record = summarize(n, times);
        record.ratio = records.last().map(|prev| record.min_ms / prev.min_ms);
        records.push(record);
    }
    Ok((ExtensionTag::of_kind(&ext), records))
}

pub fn write_csv(
    out: impl Write,
    function: &str,
    l: f64,
    ext: ExtensionTag,
    repeats: usize,
    records: &[BenchRecord],
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "function",
        "N",
        "L",
        "extension",
        "repeats",
        "median_ms",
        "mean_ms",
        "std_ms",
        "min_ms",
        "ratio",
    ])?;
    for r in records {
        w.write_record([
            function.to_string(),
            r.n.to_string(),
            fmt_f64(l),
            ext.name().to_string(),
            repeats.to_string(),
            fmt_f64(r.median_ms),
            fmt_f64(r.mean_ms),
            fmt_f64(r.std_ms),
            fmt_f64(r.min_ms),
            r.ratio.map(fmt_f64).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let (ext, records) = run_bench(args)?;
    let target = args.output.as_deref().unwrap_or(Path::new("-"));
    let out = open_output(Some(target))?;
    write_csv(out, &args.function, args.l, ext, args.repeats, &records).map_err(|e| CliError::io(target, e))
}
