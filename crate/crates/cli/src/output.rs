use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use combmetric::numfmt::format_sig;

/// Significant digits of decimal output; `None` writes shortest round-trip
/// decimals.
pub type Precision = Option<usize>;

pub fn parse_precision(s: &str) -> Result<Precision, String> {
    if s == "full" {
        return Ok(None);
    }
    match s.parse::<usize>() {
        Ok(d) if (1..=17).contains(&d) => Ok(Some(d)),
        _ => Err(format!("expected 1 to 17 or `full`, got `{s}`")),
    }
}

pub fn fmt(x: f64, precision: Precision) -> String {
    match precision {
        Some(d) => format_sig(x, d),
        None => format!("{x}"),
    }
}

/// A well-formed input that fails a check.
#[derive(Debug)]
pub struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Violation>().is_some() {
        return 2;
    }
    match e.downcast_ref::<combmetric::Error>() {
        Some(err) if !err.is_input_error() => 2,
        _ => 1,
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes `text` to `path`, or to standard output without one.
pub fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
