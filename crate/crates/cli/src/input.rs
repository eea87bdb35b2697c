//! Parsing of list-valued flags, extension tags and sample files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use halflap::reference::{reference_pair, reference_pairs, ReferencePair};
use halflap::{BoundarySource, Complex64, ExtensionKind};

use crate::error::{usage, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtensionTag {
    Even,
    Odd,
    Smooth,
    None,
}

impl ExtensionTag {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionTag::Even => "even",
            ExtensionTag::Odd => "odd",
            ExtensionTag::Smooth => "smooth",
            ExtensionTag::None => "none",
        }
    }

    /// `smooth` uses the closed-form continuation for `arctan` and estimated
    /// boundary derivatives for everything else.
    pub fn to_kind(self, function: &str) -> ExtensionKind {
        match self {
            ExtensionTag::Even => ExtensionKind::Even,
            ExtensionTag::Odd => ExtensionKind::Odd,
            ExtensionTag::None => ExtensionKind::None,
            ExtensionTag::Smooth if function == "arctan" => ExtensionKind::SmoothClosedForm,
            ExtensionTag::Smooth => ExtensionKind::SmoothGeneric(BoundarySource::Estimated),
        }
    }

    pub fn of_kind(kind: &ExtensionKind) -> Self {
        match kind {
            ExtensionKind::None => ExtensionTag::None,
            ExtensionKind::Even => ExtensionTag::Even,
            ExtensionKind::Odd => ExtensionTag::Odd,
            ExtensionKind::SmoothClosedForm | ExtensionKind::SmoothGeneric(_) => ExtensionTag::Smooth,
        }
    }
}

pub fn lookup_function(name: &str) -> Result<ReferencePair> {
    reference_pair(name).ok_or_else(|| {
        let known: Vec<_> = reference_pairs().iter().map(|p| p.name).collect();
        usage(format!("unknown function '{name}' (known: {})", known.join(", ")))
    })
}

fn parse_usize(item: &str) -> Result<usize> {
    let item = item.trim();
    if let Some(exp) = item.strip_prefix("2^") {
        let exp: u32 = exp.parse().map_err(|_| usage(format!("bad exponent in '{item}'")))?;
        return 1usize.checked_shl(exp).ok_or_else(|| usage(format!("'{item}' is too large")));
    }
    item.parse().map_err(|_| usage(format!("'{item}' is not a positive integer")))
}

/// Comma-separated sizes; an item may be `2^a` or a power range `2^a..2^b`.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
                if !lo.is_power_of_two() || !hi.is_power_of_two() || lo > hi {
                    return Err(usage(format!("range '{item}' must be 2^a..2^b with a ≤ b")));
                }
                let mut n = lo;
                while n <= hi {
                    out.push(n);
                    n *= 2;
                }
            }
            None => out.push(parse_usize(item)?),
        }
    }
    if out.is_empty() {
        return Err(usage("the N list is empty"));
    }
    if let Some(&bad) = out.iter().find(|&&n| n < 2) {
        return Err(usage(format!("every N must be at least 2, got {bad}")));
    }
    Ok(out)
}

fn parse_f64(item: &str) -> Result<f64> {
    item.trim().parse().map_err(|_| usage(format!("'{}' is not a number", item.trim())))
}

fn check_scales(values: Vec<f64>) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(usage("the L list is empty"));
    }
    if let Some(&bad) = values.iter().find(|&&l| !(l.is_finite() && l > 0.0)) {
        return Err(usage(format!("every L must be positive, got {bad}")));
    }
    Ok(values)
}

pub fn parse_l_list(spec: &str) -> Result<Vec<f64>> {
    check_scales(spec.split(',').filter(|s| !s.trim().is_empty()).map(parse_f64).collect::<Result<_>>()?)
}

/// `start:stop:step`, inclusive of `stop` up to rounding. Values are
/// `start + i·step`, so they do not accumulate drift.
pub fn parse_l_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(usage(format!("L range '{spec}' must be start:stop:step")));
    };
    let (start, stop, step) = (parse_f64(start)?, parse_f64(stop)?, parse_f64(step)?);
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(usage(format!("L range '{spec}' needs step > 0 and stop ≥ start")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    check_scales((0..count).map(|i| start + i as f64 * step).collect())
}

/// One complex sample per line, `re im` separated by whitespace; `#` starts a comment.
pub fn read_samples(path: &Path) -> Result<Vec<Complex64>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || usage(format!("{}:{}: expected 're im', got '{line}'", path.display(), lineno + 1));
        let [re, im] = fields.as_slice() else { return Err(bad()) };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

/// Opens `path` for writing, or stdout when absent or `-`.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
        _ => Ok(Box::new(io::BufWriter::new(io::stdout()))),
    }
}

/// Fixed 17-significant-digit formatting, so identical runs give identical bytes.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}
