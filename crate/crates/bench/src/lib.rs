//! Fixed inputs shared by the benchmarks.

use hmerge::{gen_3partition_instance, gen_profile, CitationDistribution, Profile, ThreePartitionInstance};

pub const SEED: u64 = 0x5eed;

/// A Zipf-shaped profile, the usual shape of a real citation record.
pub fn zipf_profile(n: usize) -> Profile {
    gen_profile(n, CitationDistribution::Zipf { s: 1.1, max: 200 }, SEED).expect("valid parameters")
}

pub fn uniform_profile(n: usize, hi: u64) -> Profile {
    gen_profile(n, CitationDistribution::Uniform { lo: 1, hi }, SEED).expect("valid parameters")
}

pub fn three_partition(m: u64, b: u64) -> ThreePartitionInstance {
    gen_3partition_instance(m, b, SEED).expect("feasible parameters")
}
