//! Text format for combs: a header line `comb <lo> <hi>` followed by one
//! `<position> <height>` line per tooth, positions ascending.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Comb, Tooth};
use crate::error::{Error, Result};
use crate::numfmt::format_sig;

fn number(line: usize, token: Option<&str>, what: &str) -> Result<f64> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse::<f64>()
        .map_err(|_| Error::parse(line, format!("bad {what} `{token}`")))
}

impl Comb {
    /// Parses the comb text format. Blank lines and lines starting with `#`
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `comb <lo> <hi>` header"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("comb") {
            return Err(Error::parse(header_line, "expected `comb <lo> <hi>` header"));
        }
        let lo = number(header_line, fields.next(), "interval start")?;
        let hi = number(header_line, fields.next(), "interval end")?;
        if fields.next().is_some() {
            return Err(Error::parse(header_line, "trailing fields in header"));
        }
        let mut teeth = Vec::new();
        for (n, line) in lines {
            let mut fields = line.split_whitespace();
            let position = number(n, fields.next(), "position")?;
            let height = number(n, fields.next(), "height")?;
            if fields.next().is_some() {
                return Err(Error::parse(n, "expected `<position> <height>`"));
            }
            teeth.push(Tooth::new(position, height));
        }
        Comb::new(lo, hi, teeth)
    }

    /// Writes the comb text format. With `digits = None` every number is
    /// written in its shortest round-trip form; otherwise it is rounded to
    /// that many significant digits.
    pub fn to_text(&self, digits: Option<usize>) -> String {
        let fmt = |x: f64| match digits {
            Some(d) => format_sig(x, d),
            None => format!("{x}"),
        };
        let mut out = format!("comb {} {}\n", fmt(self.lo), fmt(self.hi));
        for t in &self.teeth {
            let _ = writeln!(out, "{} {}", fmt(t.position), fmt(t.height));
        }
        out
    }
}

impl FromStr for Comb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Comb::parse(s)
    }
}
