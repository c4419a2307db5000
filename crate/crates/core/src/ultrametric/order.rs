use super::UltrametricMatrix;
use crate::comb::{Comb, CombPoint, Tooth};
use crate::error::{Error, Result};

/// Labels the points so that the distance between any two of them is the
/// largest distance between consecutive points in between.
///
/// Repeatedly removes the larger index `z` of a closest pair `(y, z)` (ties:
/// smallest pair in lexicographic order), then reinserts each removed point
/// immediately after its partner, in reverse order of removal.
pub fn order_ultrametric(m: &UltrametricMatrix) -> Vec<usize> {
    let n = m.n();
    if n == 0 {
        return Vec::new();
    }
    let mut alive = vec![true; n];
    // best[i] = closest alive j > i, smallest j on ties.
    let nearest_above = |i: usize, alive: &[bool]| -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in i + 1..n {
            if alive[j] && best.is_none_or(|b| m.get(i, j) < m.get(i, b)) {
                best = Some(j);
            }
        }
        best
    };
    let mut best: Vec<Option<usize>> = (0..n).map(|i| nearest_above(i, &alive)).collect();
    let mut removals = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut pick: Option<(usize, usize)> = None;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            if let Some(j) = best[i] {
                if pick.is_none_or(|(y, z)| m.get(i, j) < m.get(y, z)) {
                    pick = Some((i, j));
                }
            }
        }
        let (y, z) = pick.expect("two alive points have a pair");
        alive[z] = false;
        removals.push((y, z));
        for i in 0..n {
            if alive[i] && best[i] == Some(z) {
                best[i] = nearest_above(i, &alive);
            }
        }
    }
    let root = (0..n).find(|&i| alive[i]).expect("one point survives");
    let mut next = vec![usize::MAX; n];
    for &(y, z) in removals.iter().rev() {
        next[z] = next[y];
        next[y] = z;
    }
    let mut order = Vec::with_capacity(n);
    let mut cur = root;
    while cur != usize::MAX {
        order.push(cur);
        cur = next[cur];
    }
    order
}

/// Comb on `[0, n]` with a tooth at each integer `i` whose height is the
/// distance between the `i`-th and `(i+1)`-th points of `order`. Zero
/// distances give no tooth.
///
/// Fails if `order` is not a permutation or does not satisfy the
/// consecutive-maximum property.
pub fn comb_from_ordered(m: &UltrametricMatrix, order: &[usize]) -> Result<Comb> {
    let n = m.n();
    if order.len() != n {
        return Err(Error::InvalidParameter(format!(
            "order has {} entries for {n} points",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter("order is not a permutation".into()));
        }
    }
    for a in 0..n {
        let mut run = 0.0f64;
        for b in a + 1..n {
            run = run.max(m.get(order[b - 1], order[b]));
            if m.get(order[a], order[b]) != run {
                return Err(Error::OrderViolation { i: a, j: b });
            }
        }
    }
    let teeth = (1..n)
        .map(|i| Tooth::new(i as f64, m.get(order[i - 1], order[i])))
        .filter(|t| t.height > 0.0)
        .collect();
    Comb::new(0.0, n as f64, teeth)
}

/// Position of each point in the comb built by [`comb_from_ordered`]: the
/// middle of its unit slot.
pub fn ordered_positions(order: &[usize]) -> Vec<f64> {
    let mut pos = vec![0.0; order.len()];
    for (rank, &i) in order.iter().enumerate() {
        pos[i] = rank as f64 + 0.5;
    }
    pos
}

/// Pairwise comb distances between zeros of `comb`.
pub fn matrix_from_comb(comb: &Comb, positions: &[f64]) -> Result<UltrametricMatrix> {
    let n = positions.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no sample positions".into()));
    }
    let points: Vec<CombPoint> = positions.iter().map(|&x| CombPoint::interior(x)).collect();
    let mut sorted = positions.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("sample positions must be distinct".into()));
    }
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        crate::comb::CombFunction::check(comb, &points[i])?;
        for j in 0..i {
            let v = comb.distance(&points[i], &points[j])?;
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    Ok(UltrametricMatrix::from_comb_distances(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_points() -> UltrametricMatrix {
        // x = 0, y = 1, z = 2 with d(y,z) = 1 and x at distance 2 from both
        UltrametricMatrix::new(3, vec![0., 2., 2., 2., 0., 1., 2., 1., 0.]).unwrap()
    }

    #[test]
    fn three_point_example() {
        let m = three_points();
        let order = order_ultrametric(&m);
        assert_eq!(order, vec![0, 1, 2]);
        let comb = comb_from_ordered(&m, &order).unwrap();
        assert_eq!(comb.lo(), 0.0);
        assert_eq!(comb.hi(), 3.0);
        assert_eq!(comb.teeth(), &[Tooth::new(1.0, 2.0), Tooth::new(2.0, 1.0)]);
        // the listed order (z, y, x) is accepted as well
        let comb = comb_from_ordered(&m, &[2, 1, 0]).unwrap();
        assert_eq!(comb.teeth(), &[Tooth::new(1.0, 1.0), Tooth::new(2.0, 2.0)]);
        assert!(matches!(
            comb_from_ordered(&m, &[1, 0, 2]),
            Err(Error::OrderViolation { i: 0, j: 2 })
        ));
        assert!(comb_from_ordered(&m, &[0, 0, 2]).is_err());
    }

    #[test]
    fn small_cases() {
        let one = UltrametricMatrix::new(1, vec![0.]).unwrap();
        assert_eq!(order_ultrametric(&one), vec![0]);
        assert!(comb_from_ordered(&one, &[0]).unwrap().is_empty());
        let two = UltrametricMatrix::new(2, vec![0., 5., 5., 0.]).unwrap();
        let comb = comb_from_ordered(&two, &order_ultrametric(&two)).unwrap();
        assert_eq!((comb.lo(), comb.hi()), (0.0, 2.0));
        assert_eq!(comb.teeth(), &[Tooth::new(1.0, 5.0)]);
    }

    #[test]
    fn sampled_matrix() {
        let comb = Comb::new(0.0, 3.0, vec![Tooth::new(1.0, 1.0), Tooth::new(2.0, 2.0)]).unwrap();
        let m = matrix_from_comb(&comb, &[0.5, 1.5, 2.5]).unwrap();
        assert_eq!(m.entries(), &[0., 1., 2., 1., 0., 2., 2., 2., 0.]);
        let single = matrix_from_comb(&comb, &[0.5]).unwrap();
        assert_eq!(single.entries(), &[0.]);
        let same_gap = matrix_from_comb(&comb, &[0.25, 0.75]).unwrap();
        assert_eq!(same_gap.get(0, 1), 0.0);
        assert!(matches!(
            matrix_from_comb(&comb, &[1.0, 0.5]),
            Err(Error::InteriorOnTooth(_))
        ));
        assert!(matrix_from_comb(&comb, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn duplicate_points_share_a_slot() {
        let m = UltrametricMatrix::new(3, vec![0., 0., 1., 0., 0., 1., 1., 1., 0.]).unwrap();
        let order = order_ultrametric(&m);
        let comb = comb_from_ordered(&m, &order).unwrap();
        assert_eq!(comb.len(), 1);
        let back = matrix_from_comb(&comb, &ordered_positions(&order)).unwrap();
        assert_eq!(back.entries(), m.entries());
    }
}
