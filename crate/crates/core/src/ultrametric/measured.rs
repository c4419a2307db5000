use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::UltrametricMatrix;
use crate::comb::{Comb, Tooth};
use crate::error::{Error, Result};

/// The closed balls of radius `threshold`, laid out left to right.
///
/// Block `i` occupies the interval `[A_{i-1}, A_i)` of length its mass, where
/// `A_i` is the cumulative mass of blocks `0..=i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPartition {
    pub threshold: f64,
    pub blocks: Vec<Vec<usize>>,
    pub cumulative_masses: Vec<BigRational>,
    pub intervals: Vec<(BigRational, BigRational)>,
}

impl BallPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `point`.
    pub fn block_of(&self, point: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&point))
    }
}

fn mass_of(block: &[usize], masses: &[BigRational]) -> BigRational {
    block
        .iter()
        .fold(BigRational::zero(), |acc, &i| acc + &masses[i])
}

/// Splits `block` (ascending) into classes of `joined`, each ascending, in
/// order of smallest member.
fn classes(
    m: &UltrametricMatrix,
    block: &[usize],
    joined: impl Fn(f64) -> bool,
) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &i in block {
        match out.iter_mut().find(|c| joined(m.get(i, c[0]))) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

/// Heaviest first; equal masses keep smallest-member order.
fn rank_by_mass(mut balls: Vec<Vec<usize>>, masses: &[BigRational]) -> Vec<(Vec<usize>, BigRational)> {
    let mut ranked: Vec<(Vec<usize>, BigRational)> = balls
        .drain(..)
        .map(|b| {
            let w = mass_of(&b, masses);
            (b, w)
        })
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1));
    ranked
}

fn diameter_of(m: &UltrametricMatrix, block: &[usize]) -> f64 {
    // in an ultrametric space the diameter is attained from any fixed point
    block.iter().map(|&j| m.get(block[0], j)).fold(0.0, f64::max)
}

/// Partition into closed balls of radius `t`.
///
/// Without a parent, balls are ranked by decreasing mass, ties broken by
/// smallest member. With a parent at a larger radius, each parent block is
/// replaced in place by its ranked sub-balls.
pub fn partition_at(
    m: &UltrametricMatrix,
    t: f64,
    parent: Option<&BallPartition>,
) -> Result<BallPartition> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {t}")));
    }
    let masses = m.masses().ok_or(Error::MissingMasses)?;
    let all: Vec<usize> = (0..m.n()).collect();
    let parents: Vec<&[usize]> = match parent {
        Some(p) => {
            if !(t < p.threshold) {
                return Err(Error::InvalidParameter(format!(
                    "radius {t} is not below the parent radius {}",
                    p.threshold
                )));
            }
            p.blocks.iter().map(Vec::as_slice).collect()
        }
        None => vec![&all],
    };
    let mut blocks = Vec::new();
    let mut cumulative_masses = Vec::new();
    let mut intervals = Vec::new();
    let mut acc = BigRational::zero();
    for block in parents {
        for (ball, w) in rank_by_mass(classes(m, block, |d| d <= t), masses) {
            let start = acc.clone();
            acc += w;
            intervals.push((start, acc.clone()));
            cumulative_masses.push(acc.clone());
            blocks.push(ball);
        }
    }
    Ok(BallPartition {
        threshold: t,
        blocks,
        cumulative_masses,
        intervals,
    })
}

/// Comb of a measured ultrametric space, with the interval of each point.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredComb {
    pub comb: Comb,
    /// Exact position of every tooth, in comb order.
    pub tooth_positions: Vec<BigRational>,
    /// `[a, b)` for each point, of length its mass.
    pub intervals: Vec<(BigRational, BigRational)>,
}

impl MeasuredComb {
    /// Middle of each point's interval.
    pub fn midpoints(&self) -> Vec<f64> {
        self.intervals
            .iter()
            .map(|(a, b)| {
                let two = BigRational::from_integer(2.into());
                ((a + b) / two).to_f64().unwrap_or(f64::NAN)
            })
            .collect()
    }
}

/// Lays the points out on `[0, m]` with interval lengths equal to their
/// masses.
///
/// Balls are fragmented at every distance value from the largest down. Each
/// ball is split into the sub-balls of radius below its diameter, ranked by
/// decreasing mass (ties: smallest member first), and every new boundary
/// becomes a tooth whose height is that diameter. Points at distance zero
/// share a ball and are laid out in index order without a tooth.
pub fn comb_from_measured(m: &UltrametricMatrix) -> Result<MeasuredComb> {
    let masses = m.masses().ok_or(Error::MissingMasses)?;
    let n = m.n();
    let total = m.total_mass().expect("masses are present");
    let mut intervals = vec![(BigRational::zero(), BigRational::zero()); n];
    let mut teeth: Vec<(BigRational, f64)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, BigRational)> = vec![((0..n).collect(), BigRational::zero())];
    while let Some((block, start)) = stack.pop() {
        let diam = diameter_of(m, &block);
        if diam == 0.0 {
            let mut a = start;
            for &i in &block {
                let b = &a + &masses[i];
                intervals[i] = (a, b.clone());
                a = b;
            }
            continue;
        }
        let mut a = start;
        for (k, (ball, w)) in rank_by_mass(classes(m, &block, |d| d < diam), masses)
            .into_iter()
            .enumerate()
        {
            if k > 0 {
                teeth.push((a.clone(), diam));
            }
            let b = &a + &w;
            stack.push((ball, a));
            a = b;
        }
    }
    teeth.sort_by(|x, y| x.0.cmp(&y.0));
    let hi = total.to_f64().unwrap_or(f64::NAN);
    let float_teeth: Vec<Tooth> = teeth
        .iter()
        .map(|(a, h)| Tooth::new(a.to_f64().unwrap_or(f64::NAN), *h))
        .collect();
    let comb = Comb::new(0.0, hi, float_teeth).map_err(|e| {
        Error::Precision(format!("comb positions do not fit in f64: {e}"))
    })?;
    Ok(MeasuredComb {
        comb,
        tooth_positions: teeth.into_iter().map(|(a, _)| a).collect(),
        intervals,
    })
}

/// Probability measure giving each ball's mass in equal shares to its
/// sub-balls at every fragmentation. Points at distance zero share their
/// ball's mass equally.
pub fn visibility_measure(m: &UltrametricMatrix) -> Vec<BigRational> {
    let n = m.n();
    let mut out = vec![BigRational::zero(); n];
    let mut stack = vec![((0..n).collect::<Vec<usize>>(), BigRational::from_integer(1.into()))];
    while let Some((block, w)) = stack.pop() {
        let diam = diameter_of(m, &block);
        if diam == 0.0 {
            let share = &w / BigRational::from_integer(block.len().into());
            for &i in &block {
                out[i] = share.clone();
            }
            continue;
        }
        let balls = classes(m, &block, |d| d < diam);
        let share = &w / BigRational::from_integer(balls.len().into());
        stack.extend(balls.into_iter().map(|b| (b, share.clone())));
    }
    out
}
