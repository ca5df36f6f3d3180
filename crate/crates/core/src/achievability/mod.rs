//! Exact solvers for "can merging reach H-index `k`?" and "what is the best
//! H-index reachable by merging?", plus the exhaustive oracle and a greedy
//! lower bound built from repeated improvement steps.

mod enumerate;
pub(crate) mod search;

use serde::{Deserialize, Serialize};

use crate::improvement::improving_partition;
use crate::profile::{
    group_sums_unchecked, h_index, partition_value, singleton_partition, value_of_sums, ItemId,
    MergePartition, Profile,
};

pub use enumerate::{enumerate_partitions, labels_to_partition, RestrictedGrowth};
pub use search::{SearchConfig, SearchError, DEFAULT_NODE_BUDGET, DEFAULT_ORACLE_CAP};

use search::BinCover;

/// A partition plus the groups that certify `v(partition) >= k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AchievabilityCertificate {
    pub partition: MergePartition,
    pub k: usize,
    pub witness_group_ids: Vec<usize>,
}

impl AchievabilityCertificate {
    /// Re-checks the certificate against `profile`.
    pub fn verify(&self, profile: &Profile) -> bool {
        let Ok(sums) = crate::profile::group_sums(profile, &self.partition) else {
            return false;
        };
        let mut ids = self.witness_group_ids.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len() == self.witness_group_ids.len()
            && ids.len() >= self.k
            && ids.iter().all(|&g| g < sums.len() && sums[g] >= self.k as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxResult {
    pub value: usize,
    pub certificate: AchievabilityCertificate,
    pub nodes_explored: u64,
}

/// Outcome of a single decision query, with the search effort it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub certificate: Option<AchievabilityCertificate>,
    pub nodes_explored: u64,
}

/// Decides whether some merge partition reaches value `k`.
///
/// Items with at least `k` citations become witness singletons; the
/// remaining witness groups are found by an exact bin-covering search over
/// the smaller items. Unused items end up together in one trailing group.
pub fn is_achievable(
    profile: &Profile,
    k: usize,
    config: &SearchConfig,
) -> Result<Option<AchievabilityCertificate>, SearchError> {
    decide(profile, k, config).map(|d| d.certificate)
}

pub fn decide(profile: &Profile, k: usize, config: &SearchConfig) -> Result<Decision, SearchError> {
    let mut nodes = 0;
    let certificate = decide_counting(profile, k, config, &mut nodes)?;
    Ok(Decision { certificate, nodes_explored: nodes })
}

fn decide_counting(
    profile: &Profile,
    k: usize,
    config: &SearchConfig,
    nodes: &mut u64,
) -> Result<Option<AchievabilityCertificate>, SearchError> {
    if k == 0 {
        return Ok(Some(AchievabilityCertificate {
            partition: singleton_partition(profile),
            k,
            witness_group_ids: Vec::new(),
        }));
    }
    let threshold = k as u64;
    if k > profile.len() || threshold.checked_mul(threshold).is_none_or(|sq| sq > profile.total_citations()) {
        return Ok(None);
    }

    let order = profile.canonical_order();
    let split = order.partition_point(|&id| profile.citations_of(id) >= threshold);
    let (big, small) = order.split_at(split);
    let need = k.saturating_sub(big.len());

    let small_values: Vec<u64> = small.iter().map(|&id| profile.citations_of(id)).collect();
    let Some(covering) =
        BinCover::new(&small_values, threshold, u64::MAX, nodes, config.node_budget).solve(need)?
    else {
        return Ok(None);
    };

    let mut groups: Vec<Vec<ItemId>> = big.iter().map(|&id| vec![id]).collect();
    let mut in_bin = vec![false; small.len()];
    for bin in &covering.bins {
        for &i in bin {
            in_bin[i] = true;
        }
        groups.push(bin.iter().map(|&i| small[i]).collect());
    }
    let garbage: Vec<ItemId> = small
        .iter()
        .zip(&in_bin)
        .filter(|(_, &b)| !b)
        .map(|(&id, _)| id)
        .collect();
    let witness_group_ids: Vec<usize> = (0..k).collect();
    if !garbage.is_empty() {
        groups.push(garbage);
    }
    Ok(Some(AchievabilityCertificate {
        partition: MergePartition::new(groups),
        k,
        witness_group_ids,
    }))
}

/// The largest value any merge partition reaches.
///
/// Walks `k` upward from the plain H-index; the first `k` that fails proves
/// the previous one optimal.
pub fn max_achievable(profile: &Profile, config: &SearchConfig) -> Result<MaxResult, SearchError> {
    let mut nodes = 0;
    let mut k = h_index(profile);
    let mut best = decide_counting(profile, k, config, &mut nodes)?
        .expect("the plain H-index is always achievable");
    while let Some(cert) = decide_counting(profile, k + 1, config, &mut nodes)? {
        k += 1;
        best = cert;
    }
    Ok(MaxResult {
        value: k,
        certificate: best,
        nodes_explored: nodes,
    })
}

/// Repeats the one-shot improvement on the merged profile until it stops
/// improving, composing the partitions along the way.
pub fn greedy_lower_bound(profile: &Profile) -> (usize, MergePartition) {
    let mut partition = singleton_partition(profile);
    loop {
        let sums = group_sums_unchecked(profile, &partition);
        let merged = Profile::new(sums).expect("group sums are positive and bounded by the total");
        let Some(step) = improving_partition(&merged) else {
            let value = partition_value(profile, &partition)
                .expect("composed partitions stay valid")
                .value;
            return (value, partition);
        };
        partition = MergePartition::new(
            step.partition
                .groups
                .iter()
                .map(|outer| {
                    let mut ids: Vec<ItemId> = outer
                        .iter()
                        .flat_map(|g| partition.groups[g.0].iter().copied())
                        .collect();
                    ids.sort_unstable();
                    ids
                })
                .collect(),
        );
    }
}

/// Exhaustive maximum over every set partition. Only for small profiles.
pub fn brute_force_max(profile: &Profile, oracle_cap: usize) -> Result<MaxResult, SearchError> {
    let n = profile.len();
    if n > oracle_cap {
        return Err(SearchError::OracleCapExceeded { size: n, cap: oracle_cap });
    }
    let citations = profile.citations();
    let mut rgs = RestrictedGrowth::new(n);
    let mut sums = vec![0u64; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut visited = 0u64;
    while rgs.advance() {
        visited += 1;
        let blocks = rgs.block_count();
        sums[..blocks].iter_mut().for_each(|s| *s = 0);
        for (i, &b) in rgs.labels().iter().enumerate() {
            sums[b] += citations[i];
        }
        let value = crate::profile::h_index_of_counts(&sums[..blocks]);
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, rgs.labels().to_vec()));
        }
    }
    let (value, labels) = best.expect("there is always at least one partition");
    let partition = labels_to_partition(&labels);
    let report = value_of_sums(&group_sums_unchecked(profile, &partition));
    debug_assert_eq!(report.value, value);
    Ok(MaxResult {
        value,
        certificate: AchievabilityCertificate {
            partition,
            k: value,
            witness_group_ids: report.witness_group_ids,
        },
        nodes_explored: visited,
    })
}
