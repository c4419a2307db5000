//! Finite ultrametric spaces: matrices, their comb embeddings and the
//! measured construction.

mod measured;
mod order;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::metric;
use crate::numfmt::{format_exact, format_sig, parse_exact};

pub use measured::{
    comb_from_measured, partition_at, visibility_measure, BallPartition, MeasuredComb,
};
pub use order::{comb_from_ordered, matrix_from_comb, order_ultrametric, ordered_positions};

/// A symmetric ultrametric distance matrix with optional point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct UltrametricMatrix {
    n: usize,
    d: Vec<f64>,
    masses: Option<Vec<BigRational>>,
}

/// Rows of a matrix file before any validation.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCsv {
    pub rows: Vec<Vec<f64>>,
    pub masses: Option<Vec<BigRational>>,
}

impl UltrametricMatrix {
    /// Validates shape, symmetry, zero diagonal, nonnegativity and the strong
    /// triangle inequality.
    pub fn new(n: usize, d: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("at least one point is required".into()));
        }
        if d.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, found {}",
                n * n,
                d.len()
            )));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = d[i * n + j];
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} is not a finite nonnegative number"
                    )));
                }
                if v != d[j * n + i] {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        if let Some((i, j, k)) = metric::ultrametric_violation(n, |i, j| d[i * n + j]) {
            return Err(Error::NotUltrametric { i, j, k });
        }
        Ok(Self { n, d, masses: None })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Self::new(n, rows.concat())
    }

    /// Skips validation; only for distances produced by a comb.
    pub(crate) fn from_comb_distances(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        Self { n, d, masses: None }
    }

    /// Attaches point masses, which must be strictly positive.
    pub fn with_masses(mut self, masses: Vec<BigRational>) -> Result<Self> {
        if masses.len() != self.n {
            return Err(Error::InvalidMatrix(format!(
                "{} masses for {} points",
                masses.len(),
                self.n
            )));
        }
        if let Some(i) = masses.iter().position(|m| !m.is_positive()) {
            return Err(Error::InvalidMatrix(format!("mass of point {i} is not positive")));
        }
        self.masses = Some(masses);
        Ok(self)
    }

    pub fn without_masses(mut self) -> Self {
        self.masses = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.d
    }

    pub fn masses(&self) -> Option<&[BigRational]> {
        self.masses.as_deref()
    }

    pub fn total_mass(&self) -> Option<BigRational> {
        self.masses
            .as_ref()
            .map(|m| m.iter().fold(BigRational::zero(), |acc, x| acc + x))
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Distinct positive distances, largest first.
    pub fn thresholds(&self) -> Vec<f64> {
        let mut t: Vec<f64> = self.d.iter().copied().filter(|&v| v > 0.0).collect();
        t.sort_by(|a, b| b.total_cmp(a));
        t.dedup();
        t
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let csv = MatrixCsv::parse(text)?;
        let m = Self::from_rows(&csv.rows)?;
        match csv.masses {
            Some(masses) => m.with_masses(masses),
            None => Ok(m),
        }
    }

    /// Writes the matrix CSV. Masses are written exactly.
    pub fn to_csv(&self, digits: Option<usize>) -> String {
        let fmt = |x: f64| match digits {
            Some(d) => format_sig(x, d),
            None => format!("{x}"),
        };
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| fmt(self.get(i, j))).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        if let Some(masses) = &self.masses {
            let row: Vec<String> = masses.iter().map(format_exact).collect();
            let _ = writeln!(out, "masses,{}", row.join(","));
        }
        out
    }
}

impl MatrixCsv {
    /// Reads `n` rows of comma-separated numbers and an optional final
    /// `masses,...` row. Masses accept decimals and fractions `a/b`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut masses = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if masses.is_some() {
                return Err(Error::parse(line_no, "rows after the masses row"));
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields[0] == "masses" {
                let parsed = fields[1..]
                    .iter()
                    .map(|f| {
                        parse_exact(f)
                            .ok_or_else(|| Error::parse(line_no, format!("bad mass `{f}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                masses = Some(parsed);
                continue;
            }
            let row = fields
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::parse(line_no, format!("bad number `{f}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(1, "no matrix rows"));
        }
        Ok(Self { rows, masses })
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.rows.len())
    }
}
