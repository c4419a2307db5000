//! Input generators shared by the benchmarks.

use combmetric::ultrametric::matrix_from_comb;
use combmetric::{Comb, CombPoint, Tooth, UltrametricMatrix};
use rand::Rng;

/// Comb on `[0, n + 1]` with a tooth of random height at each integer `1..=n`.
pub fn random_comb<R: Rng>(rng: &mut R, n: usize) -> Comb {
    let teeth = (1..=n)
        .map(|i| Tooth::new(i as f64, rng.random_range(0.0..1.0) + f64::MIN_POSITIVE))
        .collect();
    Comb::new(0.0, n as f64 + 1.0, teeth).expect("integer positions are valid")
}

/// `count` random zeros of a comb built by [`random_comb`].
pub fn random_zeros<R: Rng>(rng: &mut R, comb: &Comb, count: usize) -> Vec<CombPoint> {
    let gaps = comb.len() + 1;
    (0..count)
        .map(|_| {
            let g = rng.random_range(0..gaps) as f64;
            CombPoint::interior(g + rng.random_range(0.05..0.95))
        })
        .collect()
}

/// Ultrametric matrix of `n` zeros of a comb with `4n` teeth.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> UltrametricMatrix {
    let comb = random_comb(rng, 4 * n);
    let mut positions: Vec<f64> = random_zeros(rng, &comb, n).iter().map(|p| p.position).collect();
    positions.sort_by(f64::total_cmp);
    positions.dedup();
    matrix_from_comb(&comb, &positions).expect("zeros of the comb")
}
