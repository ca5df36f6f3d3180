//! Set partitions of `{0..n-1}` in restricted-growth-string order.

use crate::profile::MergePartition;

/// Iterator over restricted growth strings `a` of length `n`:
/// `a[0] = 0` and `a[i] <= 1 + max(a[..i])`. Each string is one set partition
/// (element `i` lives in block `a[i]`).
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    labels: Vec<usize>,
    // prefix maxima: maxes[i] = max(labels[..=i])
    maxes: Vec<usize>,
    started: bool,
    finished: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            labels: vec![0; n],
            maxes: vec![0; n],
            started: false,
            finished: false,
        }
    }

    /// Advances to the next string in lexicographic order; false when done.
    pub fn advance(&mut self) -> bool {
        if self.finished {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.labels.len();
        // rightmost position that can still grow; position 0 is pinned to 0
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.labels[i] <= self.maxes[i - 1] {
                self.labels[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return true;
            }
        }
        self.finished = true;
        false
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.maxes.last().map_or(0, |m| m + 1)
    }
}

/// Converts a restricted growth string into groups of ids.
pub fn labels_to_partition(labels: &[usize]) -> MergePartition {
    let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (i, &b) in labels.iter().enumerate() {
        groups[b].push(i);
    }
    MergePartition::from_indices(groups)
}

/// Every set partition of `{0..n-1}` exactly once.
pub fn enumerate_partitions(n: usize) -> impl Iterator<Item = MergePartition> {
    let mut rgs = RestrictedGrowth::new(n);
    std::iter::from_fn(move || rgs.advance().then(|| labels_to_partition(rgs.labels())))
}
