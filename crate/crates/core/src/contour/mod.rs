//! Contour functions of trees and the combs of their spheres.
//!
//! A contour `h` codes a tree through `d_h(s, t) = h(s) + h(t) - 2 inf h`
//! over `[s, t]`. The points at height `T` form an ultrametric space whose
//! comb has one tooth per excursion of `h` below `T`, of height twice the
//! excursion depth.

mod sampler;
mod sphere;
mod staircase;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numfmt::format_sig;

pub use sampler::{sample_excursion, sample_reflected_cpp_contour, ExcursionDraw};
pub use sphere::{sphere_comb, Excursion, ExcursionList, SphereComb};
pub use staircase::{staircase, Staircase};

/// Header line of the contour CSV format.
pub const CSV_HEADER: &str = "time,value_left_limit,value";

/// A breakpoint of a contour: the left limit and the value at `time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub time: f64,
    pub left: f64,
    pub value: f64,
}

impl Breakpoint {
    pub fn new(time: f64, left: f64, value: f64) -> Self {
        Self { time, left, value }
    }

    pub fn continuous(time: f64, value: f64) -> Self {
        Self::new(time, value, value)
    }
}

/// A nonnegative right-continuous function with upward jumps only, affine
/// between breakpoints, zero before the first breakpoint and from the last
/// one on.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Breakpoint>,
}

impl Contour {
    pub fn new(points: Vec<Breakpoint>) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::InvalidContour("no breakpoints".into())),
        };
        for (i, p) in points.iter().enumerate() {
            if !(p.time.is_finite() && p.left.is_finite() && p.value.is_finite()) {
                return Err(Error::InvalidContour(format!("non-finite breakpoint {i}")));
            }
            if p.time < 0.0 || p.left < 0.0 || p.value < 0.0 {
                return Err(Error::InvalidContour(format!("negative entry at breakpoint {i}")));
            }
            if p.value < p.left {
                return Err(Error::InvalidContour(format!(
                    "negative jump at time {}",
                    p.time
                )));
            }
            if i > 0 && points[i - 1].time >= p.time {
                return Err(Error::InvalidContour(format!(
                    "times not strictly increasing at breakpoint {i}"
                )));
            }
        }
        if first.left != 0.0 {
            return Err(Error::InvalidContour("must start from 0".into()));
        }
        if last.left != 0.0 || last.value != 0.0 {
            return Err(Error::InvalidContour("must end at 0".into()));
        }
        Ok(Self { points })
    }

    /// Continuous contour through the given `(time, value)` points.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&(t, v)| Breakpoint::continuous(t, v))
                .collect(),
        )
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    /// Time of the last breakpoint: the end of the support.
    pub fn end(&self) -> f64 {
        self.points[self.points.len() - 1].time
    }

    pub fn max(&self) -> f64 {
        self.points.iter().map(|p| p.value).fold(0.0, f64::max)
    }

    fn check_time(&self, s: f64) -> Result<()> {
        if s >= 0.0 && s <= self.end() {
            Ok(())
        } else {
            Err(Error::OutsideInterval {
                position: s,
                lo: 0.0,
                hi: self.end(),
            })
        }
    }

    /// `h(s)`.
    pub fn eval(&self, s: f64) -> f64 {
        let k = self.points.partition_point(|p| p.time <= s);
        if k == 0 || k == self.points.len() {
            return if k == 0 { 0.0 } else { self.points[k - 1].value };
        }
        let (a, b) = (&self.points[k - 1], &self.points[k]);
        if s == a.time {
            return a.value;
        }
        a.value + (s - a.time) * (b.left - a.value) / (b.time - a.time)
    }

    /// Infimum of `h` over `[a, b]`: the smaller endpoint value, or a value
    /// or left limit of a breakpoint inside.
    pub fn inf_on(&self, a: f64, b: f64) -> Result<f64> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.check_time(a)?;
        self.check_time(b)?;
        let mut m = self.eval(a).min(self.eval(b));
        let start = self.points.partition_point(|p| p.time < a);
        let end = self.points.partition_point(|p| p.time <= b);
        for p in &self.points[start..end] {
            m = m.min(p.value);
            if p.time > a {
                m = m.min(p.left);
            }
        }
        Ok(m)
    }

    /// Tree distance `h(s) + h(t) - 2 inf_{[s, t]} h`.
    pub fn tree_distance(&self, s: f64, t: f64) -> Result<f64> {
        let m = self.inf_on(s, t)?;
        Ok(self.eval(s) + self.eval(t) - 2.0 * m)
    }

    /// `min(h, level)`.
    ///
    /// Crossings of the level inside affine pieces become breakpoints; their
    /// times are computed exactly from the breakpoint coordinates and rounded
    /// once. Values within `1e-12 * max(1, level)` of the level are set to it.
    pub fn clamp(&self, level: f64) -> Result<Contour> {
        if !(level > 0.0 && level.is_finite()) {
            return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
        }
        let tol = 1e-12 * level.max(1.0);
        let snap = |v: f64| {
            let v = v.min(level);
            if level - v <= tol {
                level
            } else {
                v
            }
        };
        let exact = |x: f64| BigRational::from_float(x).expect("finite");
        let mut out = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                let q = &self.points[i - 1];
                let (v0, v1) = (q.value, p.left);
                if (v0 - level) * (v1 - level) < 0.0 {
                    let t = exact(q.time)
                        + (exact(level) - exact(v0)) * (exact(p.time) - exact(q.time))
                            / (exact(v1) - exact(v0));
                    let t = t.to_f64().unwrap_or(f64::NAN);
                    if t > q.time && t < p.time {
                        out.push(Breakpoint::continuous(t, level));
                    }
                }
            }
            out.push(Breakpoint::new(p.time, snap(p.left), snap(p.value)));
        }
        Contour::new(out)
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (points.is_empty() && line == CSV_HEADER)
            {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::parse(i + 1, "expected `time,value_left_limit,value`"));
            }
            let mut v = [0.0; 3];
            for (slot, f) in v.iter_mut().zip(&fields) {
                *slot = f
                    .parse()
                    .map_err(|_| Error::parse(i + 1, format!("bad number `{f}`")))?;
            }
            points.push(Breakpoint::new(v[0], v[1], v[2]));
        }
        Contour::new(points)
    }

    pub fn to_csv(&self, digits: Option<usize>) -> String {
        let fmt = |x: f64| match digits {
            Some(d) => format_sig(x, d),
            None => format!("{x}"),
        };
        let mut out = format!("{CSV_HEADER}\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{}", fmt(p.time), fmt(p.left), fmt(p.value));
        }
        out
    }
}

/// Default relative tolerance of [`four_points_check`].
pub const FOUR_POINTS_TOLERANCE: f64 = 1e-10;

/// Four-point condition for the quadruple `0..4`: of the three pair sums
/// `d01 + d23`, `d02 + d13`, `d03 + d12`, none exceeds the larger of the
/// other two.
pub fn four_points_check(d: &[[f64; 4]; 4]) -> bool {
    four_points_check_with_tolerance(d, FOUR_POINTS_TOLERANCE)
}

/// [`four_points_check`] with slack `tolerance * max(1, largest sum)`.
pub fn four_points_check_with_tolerance(d: &[[f64; 4]; 4], tolerance: f64) -> bool {
    let sums = [
        d[0][1] + d[2][3],
        d[0][2] + d[1][3],
        d[0][3] + d[1][2],
    ];
    let slack = tolerance * sums.iter().copied().fold(1.0, f64::max);
    (0..3).all(|i| {
        let others = (0..3).filter(|&j| j != i).map(|j| sums[j]).fold(f64::MIN, f64::max);
        sums[i] <= others + slack
    })
}
