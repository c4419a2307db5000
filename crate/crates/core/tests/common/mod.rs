#![allow(dead_code)]

use combmetric::{Comb, Tooth, UltrametricMatrix};
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Comb on `[0, n + 1]` with teeth at `1..=n` and heights drawn from a small
/// set, so that ties are common.
pub fn grid_comb<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Comb {
    let teeth = (1..=n)
        .map(|i| Tooth::new(i as f64, rng.random_range(1..=6) as f64 * 0.5))
        .collect();
    Comb::new(0.0, (n + 1) as f64, teeth).unwrap()
}

/// Comb on `[0, 1]` with `n` teeth at random dyadic positions and random
/// heights.
pub fn random_comb<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Comb {
    let mut slots: Vec<u32> = Vec::with_capacity(n);
    while slots.len() < n {
        let s = rng.random_range(1..1u32 << 20);
        if !slots.contains(&s) {
            slots.push(s);
        }
    }
    let teeth = slots
        .into_iter()
        .map(|s| Tooth::new(s as f64 / (1u32 << 20) as f64, rng.random_range(0.01..4.0)))
        .collect();
    Comb::from_unsorted(0.0, 1.0, teeth).unwrap()
}

/// Ultrametric on `n` points: a random grid comb sampled at `n` of its gap
/// midpoints, possibly several in one gap, then shuffled.
pub fn random_ultrametric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UltrametricMatrix {
    let teeth = rng.random_range(n.saturating_sub(1)..=n + 2);
    let comb = grid_comb(rng, teeth);
    let mut positions: Vec<f64> = Vec::with_capacity(n);
    while positions.len() < n {
        let gap = rng.random_range(0..=teeth) as f64;
        let x = gap + rng.random_range(1..1000) as f64 / 1000.0;
        if !positions.contains(&x) {
            positions.push(x);
        }
    }
    combmetric::ultrametric::matrix_from_comb(&comb, &positions).unwrap()
}

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous cdf.
pub fn ks_statistic(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = xs.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic p-value of a KS statistic `d` from `n` samples.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = 2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// p-value of Pearson's chi-square test of homogeneity for two count
/// vectors over the same categories. Empty categories are dropped.
pub fn two_sample_chi_square(a: &[u64], b: &[u64]) -> f64 {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let mut stat = 0.0;
    let mut categories = 0;
    for (&x, &y) in a.iter().zip(b) {
        let total = (x + y) as f64;
        if total == 0.0 {
            continue;
        }
        categories += 1;
        let ea = total * na / (na + nb);
        let eb = total * nb / (na + nb);
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    if categories < 2 {
        return 1.0;
    }
    let law = ChiSquared::new((categories - 1) as f64).unwrap();
    1.0 - law.cdf(stat)
}
