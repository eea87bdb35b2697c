use std::io::Write;
use std::path::Path;

use halflap::{
    apply_to_function_with, half_laplacian_full_with, DriverConfig, GridSpec, HalfLapResult, KrasnyThreshold,
    SampleVector,
};

use crate::args::ApplyArgs;
use crate::error::{usage, CliError, Result};
use crate::input::{fmt_f64, lookup_function, open_output, read_samples};

pub(crate) fn driver_config(krasny_eps: Option<f64>) -> Result<DriverConfig> {
    let krasny = match krasny_eps {
        Some(eps) => KrasnyThreshold::new(eps)?,
        None => KrasnyThreshold::default(),
    };
    Ok(DriverConfig { krasny, keep_imaginary: false })
}

/// Node coordinates and operator values, from either a named function or a sample file.
pub fn evaluate(args: &ApplyArgs) -> Result<(GridSpec, HalfLapResult)> {
    let config = driver_config(args.krasny_eps)?;
    if let Some(path) = &args.input {
        let values = read_samples(path)?;
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(usage(format!("{}: expected 2N samples, found {}", path.display(), values.len())));
        }
        let n = values.len() / 2;
        if let Some(expected) = args.n {
            if expected != n {
                return Err(usage(format!(
                    "{}: expected {} samples for N = {expected}, found {}",
                    path.display(),
                    2 * expected,
                    values.len()
                )));
            }
        }
        let samples = SampleVector::new(values, GridSpec::full_period(n, args.l)?)?;
        let result = half_laplacian_full_with(&samples, &config)?;
        return Ok((GridSpec::half_period(n, args.l)?, result));
    }
    let name = args.function.as_deref().ok_or_else(|| usage("either --function or --input is required"))?;
    let pair = lookup_function(name)?;
    let n = args.n.ok_or_else(|| usage("--n is required with --function"))?;
    let ext = args.extension.map(|t| t.to_kind(name)).unwrap_or(pair.recommended_extension);
    let (_, result) = apply_to_function_with(pair.f, n, args.l, &ext, &config)?;
    Ok((GridSpec::half_period(n, args.l)?, result))
}

pub fn write_table(out: &mut dyn Write, grid: &GridSpec, result: &HalfLapResult) -> std::io::Result<()> {
    if result.is_real {
        writeln!(out, "x,s,value")?;
    } else {
        writeln!(out, "x,s,value_re,value_im")?;
    }
    for (j, v) in result.values.values().iter().enumerate() {
        let (x, s) = (fmt_f64(grid.x_node(j)), fmt_f64(grid.node(j)));
        if result.is_real {
            writeln!(out, "{x},{s},{}", fmt_f64(v.re))?;
        } else {
            writeln!(out, "{x},{s},{},{}", fmt_f64(v.re), fmt_f64(v.im))?;
        }
    }
    out.flush()
}

pub fn run(args: &ApplyArgs) -> Result<()> {
    let (grid, result) = evaluate(args)?;
    let target = args.output.as_deref().unwrap_or(Path::new("-"));
    let mut out = open_output(Some(target))?;
    write_table(&mut out, &grid, &result).map_err(|e| CliError::io(target, e))
}
