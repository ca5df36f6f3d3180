//! Merge manipulation of the H-index.
//!
//! A citation profile is a list of positive citation counts. Merging articles
//! replaces a group of them by one article carrying the sum of their
//! citations. This crate answers three questions about that operation:
//!
//! * [`improvement`]: can merging raise the H-index at all? Decided and
//!   constructed in polynomial time.
//! * [`achievability`]: can merging reach a given H-index `k`, and what is
//!   the maximum reachable? NP-hard in general; solved exactly by search for
//!   desk-scale inputs, and cross-checked against an exhaustive oracle.
//! * [`reduction`]: the mapping from 3-PARTITION instances to achievability
//!   instances, with an exact 3-PARTITION solver and seeded generators.
//!
//! [`format`] holds the text and JSON file formats used by the CLI.

pub mod achievability;
pub mod format;
pub mod improvement;
pub mod profile;
pub mod reduction;

pub use achievability::{
    brute_force_max, enumerate_partitions, greedy_lower_bound, is_achievable, max_achievable,
    AchievabilityCertificate, MaxResult, SearchConfig, SearchError,
};
pub use improvement::{can_improve, classify, improving_partition, Classification, ImprovementWitness};
pub use profile::{
    group_sums, h_index, partition_value, singleton_partition, validate_partition, Item, ItemId,
    MergePartition, PartitionError, Profile, ProfileError, ValueReport,
};
pub use reduction::{
    gen_3partition_instance, gen_profile, reduce_3partition, solve_3partition, verify_reduction,
    CitationDistribution, ReducedInstance, ReductionError, ReductionReport, ThreePartitionInstance,
};
