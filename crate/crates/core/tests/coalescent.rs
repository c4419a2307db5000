mod common;

use combmetric::coalescent::{
    block_counts, partition_process, sample_cpp, sample_kingman_comb, sample_splitting_depths,
    BrownianIntensity, ExponentialJumps, Partition, PointProcessSample, TailPair,
};
use combmetric::rng::{seeded, split};
use combmetric::{Comb, CombPoint, Tooth};
use rand::seq::SliceRandom;
use rand::Rng;

fn comb_132() -> Comb {
    let teeth = [(1.0, 1.0), (2.0, 3.0), (3.0, 2.0)].map(|(p, h)| Tooth::new(p, h));
    Comb::new(0.0, 4.0, teeth.to_vec()).unwrap()
}

#[test]
fn partitions_of_four_zeros() {
    let c = comb_132();
    let pos = [0.5, 1.5, 2.5, 3.5];
    let p = partition_process(&c, &pos, 2.5).unwrap();
    assert_eq!(p, Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap());
    assert_eq!(partition_process(&c, &pos, 3.0).unwrap().len(), 1);
    assert_eq!(partition_process(&c, &pos, 0.0).unwrap().len(), 4);
    assert!(partition_process(&c, &[1.0, 0.5], 1.0).is_err());
    assert_eq!(
        block_counts(&c, &pos).unwrap(),
        vec![(0.0, 4), (1.0, 3), (2.0, 2), (3.0, 1)]
    );
}

#[test]
fn partitions_coarsen_with_the_level() {
    let mut rng = seeded(31);
    for _ in 0..200 {
        let n = rng.random_range(0..30);
        let c = common::grid_comb(&mut rng, n);
        let pos: Vec<f64> = c.gap_midpoints();
        let mut previous = partition_process(&c, &pos, 0.0).unwrap();
        for k in 1..=8 {
            let next = partition_process(&c, &pos, k as f64 * 0.5).unwrap();
            assert!(previous.refines(&next));
            previous = next;
        }
        assert_eq!(previous.len(), 1);
    }
}

/// Size of the block holding `label` when 8 uniform points are cut by a
/// 20-lineage Kingman comb at level 0.3.
fn block_size_of(label: usize, rng: &mut impl Rng) -> usize {
    let c = sample_kingman_comb(20, rng).unwrap();
    let pos: Vec<f64> = (0..8).map(|_| rng.random::<f64>()).collect();
    let p = partition_process(&c, &pos, 0.3).unwrap();
    p.blocks().iter().find(|b| b.contains(&label)).unwrap().len()
}

#[test]
fn block_sizes_do_not_depend_on_labels() {
    let mut rng = seeded(32);
    let mut first = [0u64; 9];
    let mut permuted = [0u64; 9];
    let mut labels: Vec<usize> = (0..8).collect();
    for _ in 0..1000 {
        first[block_size_of(0, &mut rng)] += 1;
        labels.shuffle(&mut rng);
        permuted[block_size_of(labels[0], &mut rng)] += 1;
    }
    let p = common::two_sample_chi_square(&first, &permuted);
    assert!(p > 0.01, "chi-square p-value {p}");
}

#[test]
fn two_lineages_coalesce_at_rate_one() {
    let mut rng = seeded(33);
    let heights: Vec<f64> = (0..4000)
        .map(|_| {
            let c = sample_kingman_comb(2, &mut rng).unwrap();
            assert_eq!(c.len(), 1);
            c.teeth()[0].height
        })
        .collect();
    let d = common::ks_statistic(&heights, |x| 1.0 - (-x).exp());
    assert!(common::ks_p_value(d, heights.len()) > 0.01);
    assert!(sample_kingman_comb(1, &mut rng).is_err());
}

#[test]
fn retained_heights_follow_the_conditional_tail() {
    let (level, eps) = (1.0, 0.1);
    let mut rng = seeded(34);
    let mut heights = Vec::new();
    while heights.len() < 5000 {
        let (_, s) = sample_cpp(level, eps, &BrownianIntensity, &mut rng).unwrap();
        heights.extend(s.atoms.iter().map(|a| a.1));
    }
    let cdf = |x: f64| (1.0 / eps - 1.0 / x) / (1.0 / eps - 1.0 / level);
    let d = common::ks_statistic(&heights, cdf);
    assert!(common::ks_p_value(d, heights.len()) > 0.01, "KS distance {d}");
}

#[test]
fn custom_intensities() {
    // nu([x, inf)) = e^-x
    let law = TailPair {
        tail: |x: f64| (-x).exp(),
        inverse: |y: f64| -y.ln(),
    };
    let (comb, s) = sample_cpp(2.0, 0.5, &law, &mut seeded(35)).unwrap();
    assert!(s.atoms.iter().all(|a| (0.5..=2.0).contains(&a.1)));
    assert_eq!(comb.len(), s.atoms.len());
    let none_above = TailPair { tail: |x: f64| if x > 1.0 { 0.0 } else { 1.0 }, inverse: |_| 1.0 };
    assert!(sample_cpp(2.0, 0.5, &none_above, &mut seeded(35)).is_err());
    assert!(sample_cpp(2.0, 0.0, &law, &mut seeded(35)).is_err());
}

#[test]
fn sample_json_round_trips() {
    let (_, mut s) = sample_cpp(2.0, 0.5, &BrownianIntensity, &mut seeded(36)).unwrap();
    s.seed = Some(36);
    let text = s.to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["T", "epsilon", "seed", "teeth", "terminal"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let back = PointProcessSample::from_json(&text).unwrap();
    assert_eq!(back, s);
    assert_eq!(back.to_json(), text);
}

#[test]
fn splitting_depths_are_uncorrelated() {
    let law = ExponentialJumps { mean: 1.0 };
    let c = sample_splitting_depths(1.0, 1.5, &law, 10_000, &mut seeded(37)).unwrap();
    let h: Vec<f64> = c.teeth().iter().map(|t| t.height).collect();
    assert!(h.iter().all(|&x| x > 0.0 && x <= 2.0));
    let (mean, _) = common::mean_se(&h);
    let var = h.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    let cov = h.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum::<f64>();
    let rho = cov / var;
    assert!(rho.abs() < 3.0 / (h.len() as f64).sqrt(), "lag-1 autocorrelation {rho}");
    let again = sample_splitting_depths(1.0, 1.5, &law, 10_000, &mut seeded(37)).unwrap();
    assert_eq!(c, again);
}

#[test]
fn sampled_combs_are_ultrametric() {
    for r in 0..50 {
        let mut rng = split(38, r);
        let combs = [
            sample_kingman_comb(30, &mut rng).unwrap(),
            sample_cpp(1.0, 0.05, &BrownianIntensity, &mut rng).unwrap().0,
            sample_splitting_depths(1.0, 2.0, &ExponentialJumps { mean: 0.5 }, 20, &mut rng).unwrap(),
        ];
        for c in &combs {
            let pts: Vec<CombPoint> = c.gap_midpoints().into_iter().map(CombPoint::interior).collect();
            assert!(c.verify_ultrametric(&pts).unwrap());
        }
    }
}
