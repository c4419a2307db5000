use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Finite-stage Cantor-type staircase: a continuous nondecreasing function
/// `L` on `[0, M]` with `L(0) = 0`, `L(M) = 1`, constant on each processed
/// interval and affine in between.
#[derive(Debug, Clone, PartialEq)]
pub struct Staircase {
    stage: usize,
    length: f64,
    /// Processed intervals, in increasing position, with their plateau values.
    plateaus: Vec<(f64, f64, BigRational)>,
    /// Plateau value of each input interval, `None` for those beyond the stage.
    values: Vec<Option<BigRational>>,
}

/// Builds the stage-`stage` staircase for disjoint open intervals in
/// `(0, length)`.
///
/// Intervals are processed longest first (ties: leftmost first). Each takes
/// the midpoint of the plateau values of its processed neighbours, with 0
/// and 1 standing in at the ends of `[0, length]`.
pub fn staircase(intervals: &[(f64, f64)], length: f64, stage: usize) -> Result<Staircase> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidParameter(format!("length must be positive, got {length}")));
    }
    if stage > intervals.len() {
        return Err(Error::InvalidParameter(format!(
            "stage {stage} exceeds the {} intervals",
            intervals.len()
        )));
    }
    for &(g, d) in intervals {
        if !(g > 0.0 && g < d && d < length) {
            return Err(Error::InvalidParameter(format!(
                "interval ({g}, {d}) is not a nonempty subinterval of (0, {length})"
            )));
        }
    }
    let mut by_position: Vec<usize> = (0..intervals.len()).collect();
    by_position.sort_by(|&a, &b| intervals[a].0.total_cmp(&intervals[b].0));
    for w in by_position.windows(2) {
        let (a, b) = (intervals[w[0]], intervals[w[1]]);
        if a.1 >= b.0 {
            return Err(Error::OverlappingIntervals(a.0, a.1, b.0, b.1));
        }
    }
    let mut slot = vec![0; intervals.len()];
    for (k, &i) in by_position.iter().enumerate() {
        slot[i] = k;
    }
    let mut by_rank: Vec<usize> = (0..intervals.len()).collect();
    by_rank.sort_by(|&a, &b| {
        let (la, lb) = (intervals[a].1 - intervals[a].0, intervals[b].1 - intervals[b].0);
        lb.total_cmp(&la)
            .then(intervals[a].0.total_cmp(&intervals[b].0))
    });

    let half = BigRational::new(1.into(), 2.into());
    let mut assigned: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut values = vec![None; intervals.len()];
    for &i in &by_rank[..stage] {
        let k = slot[i];
        let below = assigned
            .range(..k)
            .next_back()
            .map_or_else(BigRational::zero, |(_, v)| v.clone());
        let above = assigned
            .range(k + 1..)
            .next()
            .map_or_else(BigRational::one, |(_, v)| v.clone());
        let v = (below + above) * &half;
        assigned.insert(k, v.clone());
        values[i] = Some(v);
    }
    let plateaus = assigned
        .into_iter()
        .map(|(k, v)| {
            let (g, d) = intervals[by_position[k]];
            (g, d, v)
        })
        .collect();
    Ok(Staircase {
        stage,
        length,
        plateaus,
        values,
    })
}

impl Staircase {
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Exact plateau value of input interval `i`, if it was processed.
    pub fn plateau_value(&self, i: usize) -> Option<&BigRational> {
        self.values.get(i).and_then(Option::as_ref)
    }

    /// Processed intervals in increasing position with their values.
    pub fn plateaus(&self) -> &[(f64, f64, BigRational)] {
        &self.plateaus
    }

    /// Corners of the graph of `L`, from `(0, 0)` to `(M, 1)`.
    pub fn breakpoints(&self) -> Vec<(f64, BigRational)> {
        let mut out = vec![(0.0, BigRational::zero())];
        for (g, d, v) in &self.plateaus {
            out.push((*g, v.clone()));
            out.push((*d, v.clone()));
        }
        out.push((self.length, BigRational::one()));
        out
    }

    /// `L(x)`, clamped to `[0, M]`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, self.length);
        let k = self.plateaus.partition_point(|(g, _, _)| *g <= x);
        if k > 0 && x <= self.plateaus[k - 1].1 {
            return self.plateaus[k - 1].2.to_f64().unwrap_or(f64::NAN);
        }
        let (x0, y0) = match k.checked_sub(1) {
            Some(i) => (self.plateaus[i].1, self.plateaus[i].2.to_f64().unwrap_or(f64::NAN)),
            None => (0.0, 0.0),
        };
        let (x1, y1) = match self.plateaus.get(k) {
            Some((g, _, v)) => (*g, v.to_f64().unwrap_or(f64::NAN)),
            None => (self.length, 1.0),
        };
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }
}
