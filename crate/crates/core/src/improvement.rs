//! Polynomial-time detection and construction of improving partitions.
//!
//! With `h` the H-index of the profile, take the `h` canonically-first items
//! and split them into supercritical ones (citations > h) and critical ones
//! (citations = h). The tail `L` is the `|C|` canonically-last items. An
//! improving partition exists iff `L` and `C` are disjoint as occurrences and
//! the items outside `C₊ ∪ C ∪ L` sum to more than `h`. The witness keeps
//! supercritical items as singletons, pairs every critical item with a tail
//! item and merges everything else into one group.

use serde::{Deserialize, Serialize};

use crate::profile::{h_index, partition_value, ItemId, MergePartition, Profile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub h: usize,
    /// `C₊`, in canonical order.
    pub supercritical_ids: Vec<ItemId>,
    /// `C`, in canonical order.
    pub critical_ids: Vec<ItemId>,
    /// `L`, in canonical order (largest first).
    pub tail_ids: Vec<ItemId>,
    /// Items in none of the above, in canonical order. Empty when `overlap`.
    pub rest_ids: Vec<ItemId>,
    pub rest_sum: u64,
    /// `L` and `C` share an occurrence: `|S| < |C₊| + 2|C|`.
    pub overlap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovementWitness {
    pub partition: MergePartition,
    pub achieved: usize,
}

pub fn classify(profile: &Profile) -> Classification {
    let order = profile.canonical_order();
    let n = order.len();
    let h = h_index(profile);
    let front = &order[..h];
    let (supercritical_ids, critical_ids): (Vec<ItemId>, Vec<ItemId>) = front
        .iter()
        .partition(|&&id| profile.citations_of(id) > h as u64);
    let c = critical_ids.len();
    let tail_ids = order[n - c..].to_vec();
    let overlap = n < h + c;
    let rest_ids = if overlap { Vec::new() } else { order[h..n - c].to_vec() };
    let rest_sum = rest_ids.iter().map(|&id| profile.citations_of(id)).sum();
    Classification {
        h,
        supercritical_ids,
        critical_ids,
        tail_ids,
        rest_ids,
        rest_sum,
        overlap,
    }
}

impl Classification {
    /// The improvement condition on an already computed classification.
    pub fn improvable(&self) -> bool {
        !self.overlap && self.rest_sum > (self.critical_ids.len() + self.supercritical_ids.len()) as u64
    }
}

pub fn can_improve(profile: &Profile) -> bool {
    classify(profile).improvable()
}

/// An improving partition, or `None` when the profile's H-index cannot be
/// raised by merging.
pub fn improving_partition(profile: &Profile) -> Option<ImprovementWitness> {
    let cls = classify(profile);
    if !cls.improvable() {
        return None;
    }
    let mut groups: Vec<Vec<ItemId>> = cls.supercritical_ids.iter().map(|&id| vec![id]).collect();
    // both sides are already value-descending
    groups.extend(
        cls.critical_ids
            .iter()
            .zip(&cls.tail_ids)
            .map(|(&c, &l)| vec![c, l]),
    );
    if !cls.rest_ids.is_empty() {
        groups.push(cls.rest_ids.clone());
    }
    let partition = MergePartition::new(groups);
    let achieved = partition_value(profile, &partition)
        .expect("construction covers every item once")
        .value;
    debug_assert!(achieved > cls.h);
    Some(ImprovementWitness { partition, achieved })
}
