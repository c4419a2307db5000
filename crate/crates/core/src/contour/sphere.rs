use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::{staircase, Contour, Staircase};
use crate::comb::{Comb, CombPoint, Tooth};
use crate::error::{Error, Result};
use crate::numfmt::format_sig;

/// An excursion below the level between two visits, with depth
/// `2(T - inf)` over `[g, d]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excursion {
    pub g: f64,
    pub d: f64,
    pub depth: f64,
}

/// Excursions below `level`, in time order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionList {
    pub level: f64,
    pub excursions: Vec<Excursion>,
}

impl ExcursionList {
    /// CSV rows `g,d,depth` under a header.
    pub fn to_csv(&self, digits: Option<usize>) -> String {
        let fmt = |x: f64| match digits {
            Some(d) => format_sig(x, d),
            None => format!("{x}"),
        };
        let mut out = String::from("g,d,depth\n");
        for e in &self.excursions {
            let _ = writeln!(out, "{},{},{}", fmt(e.g), fmt(e.d), fmt(e.depth));
        }
        out
    }
}

/// The comb of the sphere at a level, with the artifacts it is built from.
#[derive(Debug, Clone)]
pub struct SphereComb {
    /// Comb on `[0, 1]`.
    pub comb: Comb,
    pub excursions: ExcursionList,
    /// Local-time staircase over the visit clock.
    pub staircase: Staircase,
    /// `min(h, T)`.
    pub clamped: Contour,
    /// Maximal time intervals on which the clamped contour equals the level.
    pub visits: Vec<(f64, f64)>,
    /// Tooth index of each excursion, `None` when its depth is at most the
    /// cutoff.
    pub tooth_of: Vec<Option<usize>>,
    positions: Vec<f64>,
    clock_starts: Vec<f64>,
}

/// Comb of the sphere `{h = T}` of the tree coded by `h`.
///
/// The contour is clamped at `T`. Each excursion below `T` between two
/// visits is a candidate tooth of height `2(T - inf)`; those deeper than
/// `epsilon` are kept. Teeth sit at the plateau values of a staircase built
/// on a visit clock: every visit interval, possibly a single time, counts
/// for one unit and every excursion for its duration, so the staircase grows
/// exactly across visits.
pub fn sphere_comb(h: &Contour, level: f64, epsilon: f64) -> Result<SphereComb> {
    if !(level > 0.0) {
        return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!("cutoff must be nonnegative, got {epsilon}")));
    }
    let clamped = h.clamp(level)?;
    let visits = visit_intervals(&clamped, level);
    if visits.is_empty() {
        return Err(Error::EmptySphere {
            level,
            max: h.max(),
        });
    }
    let mut excursions = Vec::with_capacity(visits.len() - 1);
    for w in visits.windows(2) {
        let (g, d) = (w[0].1, w[1].0);
        let inf = clamped.inf_on(g, d)?;
        excursions.push(Excursion {
            g,
            d,
            depth: 2.0 * (level - inf),
        });
    }
    let mut clock_starts = Vec::with_capacity(visits.len());
    let mut intervals = Vec::with_capacity(excursions.len());
    let mut clock = 0.0;
    for (k, _) in visits.iter().enumerate() {
        clock_starts.push(clock);
        clock += 1.0;
        if let Some(e) = excursions.get(k) {
            intervals.push((clock, clock + (e.d - e.g)));
            clock += e.d - e.g;
        }
    }
    let stair = staircase(&intervals, clock, intervals.len())?;
    let positions: Vec<f64> = (0..intervals.len())
        .map(|i| {
            stair
                .plateau_value(i)
                .and_then(ToPrimitive::to_f64)
                .unwrap_or(f64::NAN)
        })
        .collect();
    if positions.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precision(
            "excursion positions coincide in floating point; too many nested excursions".into(),
        ));
    }
    let mut teeth = Vec::new();
    let mut tooth_of = Vec::with_capacity(excursions.len());
    for (e, &x) in excursions.iter().zip(&positions) {
        if e.depth > epsilon {
            tooth_of.push(Some(teeth.len()));
            teeth.push(Tooth::new(x, e.depth));
        } else {
            tooth_of.push(None);
        }
    }
    Ok(SphereComb {
        comb: Comb::new(0.0, 1.0, teeth)?,
        excursions: ExcursionList { level, excursions },
        staircase: stair,
        clamped,
        visits,
        tooth_of,
        positions,
        clock_starts,
    })
}

/// Maximal intervals where `h` equals `level`, in order. Single visit
/// times give degenerate intervals.
fn visit_intervals(h: &Contour, level: f64) -> Vec<(f64, f64)> {
    let pts = h.breakpoints();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut open = false;
    for (i, p) in pts.iter().enumerate() {
        if p.value != level {
            open = false;
            continue;
        }
        // the affine piece from the previous breakpoint stays at the level
        let joined = open && i > 0 && pts[i].left == level;
        if joined {
            out.last_mut().expect("an interval is open").1 = p.time;
        } else {
            out.push((p.time, p.time));
        }
        open = true;
    }
    out
}

impl SphereComb {
    /// Position of the plateau of excursion `i`.
    pub fn excursion_position(&self, i: usize) -> f64 {
        self.positions[i]
    }

    fn plateau_point(&self, excursion: usize, face: fn(f64) -> CombPoint) -> CombPoint {
        let x = self.positions[excursion];
        match self.tooth_of[excursion] {
            Some(_) => face(x),
            None => CombPoint::interior(x),
        }
    }

    /// Point of the completed comb representing the sphere point visited at
    /// `time`.
    ///
    /// The first time of a visit interval after an excursion is the right
    /// face of that excursion's tooth; the last time before an excursion is
    /// the left face of the next tooth; times inside a visit interval map
    /// affinely through the staircase.
    pub fn image_of(&self, time: f64) -> Result<CombPoint> {
        let k = self.visits.partition_point(|v| v.0 <= time);
        if k == 0 || time > self.visits[k - 1].1 {
            return Err(Error::InvalidParameter(format!(
                "time {time} is not a visit to level {}",
                self.excursions.level
            )));
        }
        let k = k - 1;
        let (a, b) = self.visits[k];
        let last = self.visits.len() - 1;
        if time == a && k > 0 {
            return Ok(self.plateau_point(k - 1, CombPoint::right));
        }
        if time == b && k < last {
            return Ok(self.plateau_point(k, CombPoint::left));
        }
        let frac = if b > a { (time - a) / (b - a) } else { 0.5 };
        let x = self.staircase.eval(self.clock_starts[k] + frac);
        if k > 0 && x <= self.positions[k - 1] {
            return Ok(self.plateau_point(k - 1, CombPoint::right));
        }
        if k < last && x >= self.positions[k] {
            return Ok(self.plateau_point(k, CombPoint::left));
        }
        Ok(CombPoint::interior(x))
    }

    /// Distance between the images of two visit times.
    pub fn distance(&self, s: f64, t: f64) -> Result<f64> {
        self.comb.distance(&self.image_of(s)?, &self.image_of(t)?)
    }

    /// Every breakpoint time at which the clamped contour visits the level.
    pub fn visit_times(&self) -> Vec<f64> {
        let level = self.excursions.level;
        self.clamped
            .breakpoints()
            .iter()
            .filter(|p| p.value == level)
            .map(|p| p.time)
            .collect()
    }
}
