//! Random combs and the partitions they induce on sampled points.

mod cpp;
mod kingman;
mod splitting;

use crate::comb::{Comb, CombFunction, CombPoint};
use crate::error::{Error, Result};

pub use cpp::{
    brownian_tail, sample_cpp, BrownianIntensity, Intensity, PointProcessSample, TailPair,
};
pub use kingman::{kingman_heights, sample_kingman_comb};
pub use splitting::{
    sample_splitting_depths, ConstantJumps, ExponentialJumps, InverseTailJumps, JumpLaw,
};

/// A partition of `0..n` into nonempty blocks.
///
/// Canonical form: each block ascending, blocks ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Checks that `blocks` are nonempty, disjoint and cover `0..n`, and puts
    /// them in canonical form.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidParameter("empty block".into()));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidParameter(format!(
                        "label {i} is out of range or repeated"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter("blocks do not cover every label".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes, largest first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let n: usize = coarser.blocks.iter().map(Vec::len).sum();
        let mut owner = vec![usize::MAX; n];
        for (k, b) in coarser.blocks.iter().enumerate() {
            for &i in b {
                owner[i] = k;
            }
        }
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&i| i < n && owner[i] == owner[b[0]])
        })
    }
}

/// Labels sorted by position, with the highest tooth between each pair of
/// neighbours.
fn sorted_gaps(comb: &Comb, positions: &[f64]) -> Result<(Vec<usize>, Vec<f64>)> {
    for &x in positions {
        comb.check(&CombPoint::interior(x))?;
    }
    let mut idx: Vec<usize> = (0..positions.len()).collect();
    idx.sort_by(|&a, &b| positions[a].total_cmp(&positions[b]));
    if idx.windows(2).any(|w| positions[w[0]] == positions[w[1]]) {
        return Err(Error::InvalidParameter("positions must be distinct".into()));
    }
    let gaps = idx
        .windows(2)
        .map(|w| comb.open_sup(positions[w[0]], positions[w[1]]))
        .collect();
    Ok((idx, gaps))
}

/// Partition of the labels `0..n` of `positions` where `i` and `j` share a
/// block iff their comb distance is at most `t`.
///
/// Blocks are maximal runs of positions (in increasing order) separated only
/// by teeth of height at most `t`.
pub fn partition_process(comb: &Comb, positions: &[f64], t: f64) -> Result<Partition> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("level must be nonnegative, got {t}")));
    }
    let (idx, gaps) = sorted_gaps(comb, positions)?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, &i) in idx.iter().enumerate() {
        if k > 0 && gaps[k - 1] <= t {
            blocks.last_mut().expect("a block is open").push(i);
        } else {
            blocks.push(vec![i]);
        }
    }
    Partition::new(positions.len(), blocks)
}

/// Number of blocks of [`partition_process`] as a step function of `t`:
/// pairs `(t_k, n_k)` meaning `n_k` blocks on `[t_k, t_{k+1})`, starting at
/// `t_0 = 0` and ending with a single block.
pub fn block_counts(comb: &Comb, positions: &[f64]) -> Result<Vec<(f64, usize)>> {
    let (_, mut gaps) = sorted_gaps(comb, positions)?;
    gaps.sort_by(f64::total_cmp);
    let mut blocks = positions.len() - gaps.iter().filter(|&&g| g == 0.0).count();
    let mut out = vec![(0.0, blocks)];
    for g in gaps.into_iter().filter(|&g| g > 0.0) {
        blocks -= 1;
        match out.last_mut() {
            Some(last) if last.0 == g => last.1 = blocks,
            _ => out.push((g, blocks)),
        }
    }
    Ok(out)
}
