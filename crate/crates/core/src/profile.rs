//! Citation profiles, merge partitions and the two value functions: the plain
//! H-index of a profile and the value of a partition whose groups are merged
//! articles.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense identifier of an item within its profile (input position).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ItemId(pub usize);

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One article: its identity and its citation count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub id: ItemId,
    pub citations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("item {index} has zero citations; counts must be positive")]
    ZeroCitations { index: usize },
    #[error("total citation count overflows u64")]
    SumOverflow,
}

/// A multiset of positive citation counts, kept as an explicit list of
/// occurrences. Equal counts remain distinct items with their own ids.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Profile {
    items: Vec<Item>,
    total: u64,
}

impl Profile {
    /// Builds a profile; ids are assigned in input order.
    pub fn new<I: IntoIterator<Item = u64>>(citations: I) -> Result<Self, ProfileError> {
        let mut items = Vec::new();
        let mut total: u64 = 0;
        for (index, c) in citations.into_iter().enumerate() {
            if c == 0 {
                return Err(ProfileError::ZeroCitations { index });
            }
            total = total.checked_add(c).ok_or(ProfileError::SumOverflow)?;
            items.push(Item { id: ItemId(index), citations: c });
        }
        Ok(Profile { items, total })
    }

    pub fn empty() -> Self {
        Profile::default()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Sum of all citation counts.
    pub fn total_citations(&self) -> u64 {
        self.total
    }

    pub fn citations(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.citations).collect()
    }

    /// Citation count of `id`. Panics on an id outside the profile.
    pub fn citations_of(&self, id: ItemId) -> u64 {
        self.items[id.0].citations
    }

    pub fn contains(&self, id: ItemId) -> bool {
        id.0 < self.items.len()
    }

    pub fn max_citations(&self) -> u64 {
        self.items.iter().map(|it| it.citations).max().unwrap_or(0)
    }

    /// Ids sorted by citations descending, ties by ascending id.
    pub fn canonical_order(&self) -> Vec<ItemId> {
        let mut ids: Vec<ItemId> = self.items.iter().map(|it| it.id).collect();
        ids.sort_by_key(|id| (Reverse(self.items[id.0].citations), *id));
        ids
    }
}

/// A partition of a profile's ids into nonempty groups. Each group stands
/// for one merged article whose citation count is the sum of its members.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MergePartition {
    pub groups: Vec<Vec<ItemId>>,
}

impl MergePartition {
    pub fn new(groups: Vec<Vec<ItemId>>) -> Self {
        MergePartition { groups }
    }

    /// Convenience constructor from raw indices.
    pub fn from_indices(groups: Vec<Vec<usize>>) -> Self {
        MergePartition {
            groups: groups
                .into_iter()
                .map(|g| g.into_iter().map(ItemId).collect())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("group {group} is empty")]
    EmptyGroup { group: usize },
    #[error("group {group} references unknown item {item}")]
    UnknownItem { group: usize, item: ItemId },
    #[error("item {item} appears again in group {group}")]
    DuplicateItem { group: usize, item: ItemId },
    #[error("item {item} is not covered by any group")]
    UncoveredItem { item: ItemId },
}

/// Value of a partition together with the good subset that realises it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueReport {
    pub value: usize,
    /// Indices of the witness groups, ascending.
    pub witness_group_ids: Vec<usize>,
}

/// Largest `t` such that at least `t` items have `t` or more citations.
pub fn h_index(profile: &Profile) -> usize {
    h_index_of_counts(&profile.citations())
}

/// H-index of a bare list of counts (zeros are allowed here and never count).
pub fn h_index_of_counts(counts: &[u64]) -> usize {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|(i, &c)| c >= (*i as u64) + 1)
        .count()
}

pub fn singleton_partition(profile: &Profile) -> MergePartition {
    MergePartition {
        groups: profile.items().iter().map(|it| vec![it.id]).collect(),
    }
}

/// Checks that `partition` covers every id of `profile` exactly once with no
/// empty groups. Reports the first violation found scanning groups in order.
pub fn validate_partition(profile: &Profile, partition: &MergePartition) -> Result<(), PartitionError> {
    let mut seen = vec![false; profile.len()];
    for (group, members) in partition.groups.iter().enumerate() {
        if members.is_empty() {
            return Err(PartitionError::EmptyGroup { group });
        }
        for &item in members {
            if !profile.contains(item) {
                return Err(PartitionError::UnknownItem { group, item });
            }
            if std::mem::replace(&mut seen[item.0], true) {
                return Err(PartitionError::DuplicateItem { group, item });
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(missing) => Err(PartitionError::UncoveredItem { item: ItemId(missing) }),
        None => Ok(()),
    }
}

/// Merged citation count of each group, in group order.
pub fn group_sums(profile: &Profile, partition: &MergePartition) -> Result<Vec<u64>, PartitionError> {
    validate_partition(profile, partition)?;
    Ok(group_sums_unchecked(profile, partition))
}

pub(crate) fn group_sums_unchecked(profile: &Profile, partition: &MergePartition) -> Vec<u64> {
    partition
        .groups
        .iter()
        .map(|g| g.iter().map(|&id| profile.citations_of(id)).sum())
        .collect()
}

/// The size of the largest good subset of `partition`: a set of groups each
/// of whose merged sums is at least the size of the set.
pub fn partition_value(profile: &Profile, partition: &MergePartition) -> Result<ValueReport, PartitionError> {
    let sums = group_sums(profile, partition)?;
    Ok(value_of_sums(&sums))
}

pub(crate) fn value_of_sums(sums: &[u64]) -> ValueReport {
    let mut order: Vec<usize> = (0..sums.len()).collect();
    order.sort_by_key(|&g| (Reverse(sums[g]), g));
    let value = order
        .iter()
        .enumerate()
        .take_while(|(i, &g)| sums[g] >= (*i as u64) + 1)
        .count();
    let mut witness_group_ids = order[..value].to_vec();
    witness_group_ids.sort_unstable();
    ValueReport { value, witness_group_ids }
}
