//! Generic checks on finite distance functions.

/// Returns the first triple `(i, j, k)` with `d(i,k) > max(d(i,j), d(j,k))`,
/// scanning all ordered triples of `0..n`.
pub fn ultrametric_violation<F>(n: usize, dist: F) -> Option<(usize, usize, usize)>
where
    F: Fn(usize, usize) -> f64,
{
    for i in 0..n {
        for k in 0..n {
            let dik = dist(i, k);
            for j in 0..n {
                if dik > dist(i, j).max(dist(j, k)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Strong triangle inequality over all triples of `0..n`.
pub fn is_ultrametric<F>(n: usize, dist: F) -> bool
where
    F: Fn(usize, usize) -> f64,
{
    ultrametric_violation(n, dist).is_none()
}
