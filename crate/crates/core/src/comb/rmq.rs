use std::ops::Range;

/// Sparse table answering maximum queries over contiguous runs of tooth
/// heights in constant time after an `O(n log n)` build.
#[derive(Debug, Clone, Default)]
pub struct RangeMaxIndex {
    // levels[k][i] = max of values[i .. i + 2^k]
    levels: Vec<Vec<f64>>,
}

impl RangeMaxIndex {
    pub fn new(values: &[f64]) -> Self {
        let n = values.len();
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while width * 2 <= n {
            let prev = levels.last().expect("level 0 exists");
            let next = prev
                .iter()
                .zip(&prev[width..])
                .map(|(a, b)| a.max(*b))
                .collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    pub fn len(&self) -> usize {
        self.levels.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Maximum over `values[range]`, or `None` for an empty run.
    ///
    /// # Panics
    ///
    /// Panics if `range.end` exceeds the number of indexed values.
    pub fn query(&self, range: Range<usize>) -> Option<f64> {
        let Range { start, end } = range;
        assert!(end <= self.len(), "run {start}..{end} out of bounds");
        if start >= end {
            return None;
        }
        let k = (end - start).ilog2() as usize;
        let row = &self.levels[k];
        Some(row[start].max(row[end - (1 << k)]))
    }

    /// Supremum of a run of nonnegative heights: the empty run yields 0.
    pub fn sup(&self, range: Range<usize>) -> f64 {
        self.query(range).unwrap_or(0.0)
    }
}
