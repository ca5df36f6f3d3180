//! 3-PARTITION instances, their mapping to achievability instances, an exact
//! 3-PARTITION solver and seeded instance generators.
//!
//! Given `(M, m, b)`, every number is shifted by `m`, the target becomes
//! `k = b + 3m`, and `k - m` padding items of value `k` are appended. On
//! instances whose numbers lie strictly between `b/4` and `b/2` the reduced
//! profile reaches value `k` exactly when `M` splits into `m` blocks of sum
//! `b`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::achievability::search::BinCover;
use crate::achievability::{max_achievable, AchievabilityCertificate, SearchConfig, SearchError};
use crate::profile::{ItemId, MergePartition, Profile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("malformed 3-PARTITION instance: {0}")]
    MalformedInstance(String),
    #[error("instance is out of range: every number must lie strictly between b/4 and b/2")]
    OutOfRange,
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    numbers: Vec<u64>,
    m: u64,
    b: u64,
}

impl ThreePartitionInstance {
    /// Checks `|M| = 3m`, `Σ M = m·b` and positivity.
    pub fn new(numbers: Vec<u64>, m: u64, b: u64) -> Result<Self, ReductionError> {
        if m == 0 || b == 0 {
            return Err(ReductionError::MalformedInstance("m and b must be positive".into()));
        }
        let expected_len = m.checked_mul(3).filter(|&l| l == numbers.len() as u64);
        if expected_len.is_none() {
            return Err(ReductionError::MalformedInstance(format!(
                "expected 3m = {} numbers, got {}",
                3 * m as u128,
                numbers.len()
            )));
        }
        if let Some(i) = numbers.iter().position(|&x| x == 0) {
            return Err(ReductionError::MalformedInstance(format!("number {i} is zero")));
        }
        let sum: u128 = numbers.iter().map(|&x| x as u128).sum();
        if sum != m as u128 * b as u128 {
            return Err(ReductionError::MalformedInstance(format!(
                "numbers sum to {sum}, expected m·b = {}",
                m as u128 * b as u128
            )));
        }
        // k = b + 3m must fit comfortably
        if b.checked_add(m * 3).and_then(|k| k.checked_mul(k)).is_none() {
            return Err(ReductionError::MalformedInstance("b is too large".into()));
        }
        Ok(ThreePartitionInstance { numbers, m, b })
    }

    pub fn numbers(&self) -> &[u64] {
        &self.numbers
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Every number lies strictly between `b/4` and `b/2`.
    pub fn in_range(&self) -> bool {
        self.numbers
            .iter()
            .all(|&x| x > self.b / 4 && x <= (self.b - 1) / 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    /// Shifted numbers first (ids `0..3m`, same order as `M`), then padding.
    pub profile: Profile,
    pub k: u64,
    pub shifted: Vec<u64>,
    pub padding_count: u64,
}

pub fn reduce_3partition(instance: &ThreePartitionInstance) -> ReducedInstance {
    let m = instance.m;
    let k = instance.b + 3 * m;
    let shifted: Vec<u64> = instance.numbers.iter().map(|&x| x + m).collect();
    let padding_count = k - m;
    let citations = shifted
        .iter()
        .copied()
        .chain(std::iter::repeat_n(k, padding_count as usize));
    let profile = Profile::new(citations).expect("shifted values and k are positive; k² bounds the total");
    ReducedInstance {
        profile,
        k,
        shifted,
        padding_count,
    }
}

/// Splits `M` into `m` blocks each summing to `b`, as index lists into
/// `instance.numbers()`. Block cardinality is not constrained.
pub fn solve_3partition(
    instance: &ThreePartitionInstance,
    config: &SearchConfig,
) -> Result<Option<Vec<Vec<usize>>>, ReductionError> {
    let size = instance.numbers.len();
    if size > config.oracle_cap {
        return Err(SearchError::OracleCapExceeded { size, cap: config.oracle_cap }.into());
    }
    let mut nodes = 0;
    let covering = BinCover::new(&instance.numbers, instance.b, instance.b, &mut nodes, config.node_budget)
        .solve(instance.m as usize)?;
    Ok(covering.map(|c| {
        let mut blocks = c.bins;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks
    }))
}

/// Turns a 3-PARTITION solution into a certificate for the reduced instance:
/// the padding singletons first, then the shifted blocks.
pub fn lift_certificate(reduced: &ReducedInstance, blocks: &[Vec<usize>]) -> AchievabilityCertificate {
    let n = reduced.shifted.len();
    let mut groups: Vec<Vec<ItemId>> = (0..reduced.padding_count as usize)
        .map(|i| vec![ItemId(n + i)])
        .collect();
    groups.extend(blocks.iter().map(|b| b.iter().map(|&i| ItemId(i)).collect()));
    let k = reduced.k as usize;
    AchievabilityCertificate {
        witness_group_ids: (0..groups.len()).collect(),
        partition: MergePartition::new(groups),
        k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub m: u64,
    pub b: u64,
    pub k: u64,
    pub three_partition: Option<Vec<Vec<usize>>>,
    pub max_value: usize,
    pub achievable: bool,
    pub agree: bool,
    /// Certificate built from the 3-PARTITION solution.
    pub lifted_certificate: Option<AchievabilityCertificate>,
    /// Certificate found by the achievability solver.
    pub solver_certificate: Option<AchievabilityCertificate>,
    pub nodes_explored: u64,
}

/// Solves both sides of the reduction and reports whether they agree.
pub fn verify_reduction(
    instance: &ThreePartitionInstance,
    config: &SearchConfig,
) -> Result<ReductionReport, ReductionError> {
    if !instance.in_range() {
        return Err(ReductionError::OutOfRange);
    }
    let blocks = solve_3partition(instance, config)?;
    let reduced = reduce_3partition(instance);
    let best = max_achievable(&reduced.profile, config)?;
    let achievable = best.value as u64 >= reduced.k;
    let lifted_certificate = blocks.as_ref().map(|b| lift_certificate(&reduced, b));
    Ok(ReductionReport {
        m: instance.m,
        b: instance.b,
        k: reduced.k,
        agree: blocks.is_some() == achievable,
        three_partition: blocks,
        max_value: best.value,
        achievable,
        lifted_certificate,
        solver_certificate: achievable.then_some(best.certificate),
        nodes_explored: best.nodes_explored,
    })
}

/// Seeded generator of in-range 3-PARTITION instances. Instances are not
/// labelled; use [`solve_3partition`] for ground truth.
pub fn gen_3partition_instance(m: u64, b: u64, seed: u64) -> Result<ThreePartitionInstance, ReductionError> {
    if m == 0 || b == 0 {
        return Err(ReductionError::InfeasibleParameters("m and b must be positive".into()));
    }
    let lo = b / 4 + 1;
    let hi = (b - 1) / 2;
    let len = 3 * m;
    let target = m * b;
    if lo > hi || len * lo > target || len * hi < target {
        return Err(ReductionError::InfeasibleParameters(format!(
            "no {len} integers in ({}/4, {}/2) sum to {target}",
            b, b
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut numbers: Vec<u64> = Vec::new();
    for _ in 0..1000 {
        numbers = (0..len).map(|_| rng.random_range(lo..=hi)).collect();
        if numbers.iter().sum::<u64>() == target {
            return ThreePartitionInstance::new(numbers, m, b);
        }
    }
    // walk the last sample toward the target one unit at a time
    let mut sum: u64 = numbers.iter().sum();
    while sum != target {
        let i = rng.random_range(0..numbers.len());
        if sum < target && numbers[i] < hi {
            numbers[i] += 1;
            sum += 1;
        } else if sum > target && numbers[i] > lo {
            numbers[i] -= 1;
            sum -= 1;
        }
    }
    ThreePartitionInstance::new(numbers, m, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CitationDistribution {
    /// Uniform integers in `lo..=hi`.
    Uniform { lo: u64, hi: u64 },
    /// Zipf over `1..=max` with exponent `s`.
    Zipf { s: f64, max: u64 },
}

pub fn gen_profile(n: usize, distribution: CitationDistribution, seed: u64) -> Result<Profile, ReductionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<u64> = match distribution {
        CitationDistribution::Uniform { lo, hi } => {
            if lo == 0 || lo > hi {
                return Err(ReductionError::InvalidParameters(format!(
                    "uniform range {lo}..={hi} must satisfy 1 <= lo <= hi"
                )));
            }
            (0..n).map(|_| rng.random_range(lo..=hi)).collect()
        }
        CitationDistribution::Zipf { s, max } => {
            if max == 0 {
                return Err(ReductionError::InvalidParameters("zipf max must be positive".into()));
            }
            let zipf = Zipf::new(max as f64, s).map_err(|e| {
                ReductionError::InvalidParameters(format!("zipf(s = {s}, max = {max}): {e}"))
            })?;
            (0..n)
                .map(|_| (zipf.sample(&mut rng).round() as u64).clamp(1, max))
                .collect()
        }
    };
    Profile::new(values).map_err(|e| ReductionError::InvalidParameters(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::achievability::is_achievable;

    fn inst(v: &[u64], m: u64, b: u64) -> ThreePartitionInstance {
        ThreePartitionInstance::new(v.to_vec(), m, b).unwrap()
    }

    fn count_of(profile: &Profile, value: u64) -> usize {
        profile.citations().iter().filter(|&&c| c == value).count()
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_3partition(&inst(&[3, 3, 4, 3, 3, 4], 2, 10));
        assert_eq!(r.shifted, vec![5, 5, 6, 5, 5, 6]);
        assert_eq!(r.k, 16);
        assert_eq!(r.padding_count, 14);
        assert_eq!(r.profile.len(), 20);
        assert_eq!(count_of(&r.profile, 16), 14);
        assert_eq!(&r.profile.citations()[..6], &[5, 5, 6, 5, 5, 6]);

        let r = reduce_3partition(&inst(&[3, 3, 4], 1, 10));
        assert_eq!(r.shifted, vec![4, 4, 5]);
        assert_eq!(r.k, 13);
        assert_eq!(r.padding_count, 12);
        assert_eq!(count_of(&r.profile, 13), 12);

        let i = inst(&[1, 1, 1, 1, 1, 7], 2, 6);
        assert!(!i.in_range());
        let r = reduce_3partition(&i);
        assert_eq!(r.shifted, vec![3, 3, 3, 3, 3, 9]);
        assert_eq!(r.k, 12);
        assert_eq!(r.padding_count, 10);
    }

    #[test]
    fn malformed_instances() {
        assert!(matches!(
            ThreePartitionInstance::new(vec![10], 1, 10),
            Err(ReductionError::MalformedInstance(_))
        ));
        assert!(matches!(
            ThreePartitionInstance::new(vec![3, 3, 3], 1, 10),
            Err(ReductionError::MalformedInstance(_))
        ));
        assert!(matches!(
            ThreePartitionInstance::new(vec![], 0, 10),
            Err(ReductionError::MalformedInstance(_))
        ));
        assert!(matches!(
            ThreePartitionInstance::new(vec![0, 5, 5], 1, 10),
            Err(ReductionError::MalformedInstance(_))
        ));
    }

    #[test]
    fn solve_examples() {
        let i = inst(&[3, 3, 4, 3, 3, 4], 2, 10);
        let blocks = solve_3partition(&i, &SearchConfig::default()).unwrap().unwrap();
        let mut vals: Vec<Vec<u64>> = blocks
            .iter()
            .map(|b| {
                let mut v: Vec<u64> = b.iter().map(|&j| i.numbers()[j]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        vals.sort();
        assert_eq!(vals, vec![vec![3, 3, 4], vec![3, 3, 4]]);

        let i = inst(&[1, 1, 1, 1, 1, 7], 2, 6);
        assert_eq!(solve_3partition(&i, &SearchConfig::default()).unwrap(), None);

        // cardinality is free: {1,1,1,1} and {2,2} both sum to 4
        let i = inst(&[1, 1, 1, 1, 2, 2], 2, 4);
        assert!(solve_3partition(&i, &SearchConfig::default()).unwrap().is_some());
    }

    #[test]
    fn oracle_cap_applies_to_solver() {
        let i = gen_3partition_instance(4, 20, 1).unwrap();
        assert!(matches!(
            solve_3partition(&i, &SearchConfig::default()),
            Err(ReductionError::Search(SearchError::OracleCapExceeded { size: 12, cap: 11 }))
        ));
        let wide = SearchConfig { oracle_cap: 12, ..SearchConfig::default() };
        assert!(solve_3partition(&i, &wide).is_ok());
    }

    #[test]
    fn verify_yes_example_lifts_certificate() {
        let i = inst(&[3, 3, 4, 3, 3, 4], 2, 10);
        let rep = verify_reduction(&i, &SearchConfig::default()).unwrap();
        assert!(rep.agree && rep.achievable);
        assert_eq!(rep.max_value, 16);
        let reduced = reduce_3partition(&i);
        let lifted = rep.lifted_certificate.unwrap();
        assert!(lifted.verify(&reduced.profile));
        assert_eq!(lifted.partition.len(), 16);
        let sums = crate::profile::group_sums(&reduced.profile, &lifted.partition).unwrap();
        assert!(sums[..14].iter().all(|&s| s == 16));
        assert!(lifted.partition.groups[..14].iter().all(|g| g.len() == 1));
        for g in &lifted.partition.groups[14..] {
            let mut v: Vec<u64> = g.iter().map(|&id| reduced.profile.citations_of(id)).collect();
            v.sort_unstable();
            assert_eq!(v, vec![5, 5, 6]);
        }
        assert!(rep.solver_certificate.unwrap().verify(&reduced.profile));
    }

    #[test]
    fn verify_rejects_out_of_range() {
        let i = inst(&[1, 1, 1, 1, 1, 7], 2, 6);
        assert_eq!(verify_reduction(&i, &SearchConfig::default()), Err(ReductionError::OutOfRange));
    }

    #[test]
    fn in_range_no_instance_agrees() {
        // b = 13: range 4..=6; {4,4,4,4,5,5,6,6,? } search a NO instance by seed
        let cfg = SearchConfig::default();
        let mut found_no = false;
        for seed in 0..200 {
            let i = gen_3partition_instance(3, 13, seed).unwrap();
            let rep = verify_reduction(&i, &cfg).unwrap();
            assert!(rep.agree, "seed {seed}");
            if rep.three_partition.is_none() {
                found_no = true;
                assert!(rep.max_value < 22);
                assert!(is_achievable(&reduce_3partition(&i).profile, 22, &cfg).unwrap().is_none());
            }
        }
        assert!(found_no);
    }

    #[test]
    fn generator_examples() {
        for seed in 0..20 {
            let i = gen_3partition_instance(2, 10, seed).unwrap();
            assert_eq!(i.numbers().len(), 6);
            assert!(i.numbers().iter().all(|&x| x == 3 || x == 4));
            assert_eq!(i.numbers().iter().sum::<u64>(), 20);
            assert!(i.in_range());
        }
        let mut one = gen_3partition_instance(1, 10, 7).unwrap().numbers().to_vec();
        one.sort_unstable();
        assert_eq!(one, vec![3, 3, 4]);
        assert_eq!(gen_3partition_instance(2, 6, 3).unwrap().numbers(), &[2, 2, 2, 2, 2, 2]);
        assert!(matches!(
            gen_3partition_instance(2, 4, 0),
            Err(ReductionError::InfeasibleParameters(_))
        ));
        assert_eq!(gen_3partition_instance(3, 17, 9), gen_3partition_instance(3, 17, 9));
    }

    #[test]
    fn profile_generator() {
        let prof = gen_profile(6, CitationDistribution::Uniform { lo: 1, hi: 5 }, 42).unwrap();
        assert_eq!(prof.len(), 6);
        assert!(prof.citations().iter().all(|&c| (1..=5).contains(&c)));
        assert!(gen_profile(0, CitationDistribution::Uniform { lo: 1, hi: 5 }, 42).unwrap().is_empty());
        assert_eq!(
            gen_profile(30, CitationDistribution::Zipf { s: 1.1, max: 100 }, 5),
            gen_profile(30, CitationDistribution::Zipf { s: 1.1, max: 100 }, 5)
        );
        let z = gen_profile(200, CitationDistribution::Zipf { s: 1.1, max: 100 }, 5).unwrap();
        assert!(z.citations().iter().all(|&c| (1..=100).contains(&c)));
        assert!(gen_profile(3, CitationDistribution::Uniform { lo: 0, hi: 5 }, 1).is_err());
        assert!(gen_profile(3, CitationDistribution::Uniform { lo: 6, hi: 5 }, 1).is_err());
        assert!(gen_profile(3, CitationDistribution::Zipf { s: -1.0, max: 5 }, 1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn reduction_arithmetic(m in 1u64..=3, b in 7u64..=20, seed in any::<u64>()) {
                let Ok(i) = gen_3partition_instance(m, b, seed) else {
                    return Ok(());
                };
                let r = reduce_3partition(&i);
                prop_assert_eq!(r.k, b + 3 * m);
                prop_assert_eq!(r.shifted.iter().sum::<u64>(), m * r.k);
                prop_assert_eq!(r.profile.len() as u64, 3 * m + b + 2 * m);
                prop_assert_eq!(r.profile.total_citations(), r.k * r.k);
            }

            #[test]
            fn in_range_witness_blocks_have_three_items(m in 1u64..=3, b in 7u64..=20, seed in any::<u64>()) {
                let Ok(i) = gen_3partition_instance(m, b, seed) else {
                    return Ok(());
                };
                if let Some(blocks) = solve_3partition(&i, &SearchConfig::default()).unwrap() {
                    prop_assert_eq!(blocks.len() as u64, m);
                    for blk in &blocks {
                        prop_assert_eq!(blk.len(), 3);
                        prop_assert_eq!(blk.iter().map(|&j| i.numbers()[j]).sum::<u64>(), b);
                    }
                    let r = reduce_3partition(&i);
                    let cert = lift_certificate(&r, &blocks);
                    prop_assert!(cert.verify(&r.profile));
                    prop_assert_eq!(cert.witness_group_ids.len() as u64, r.k);
                }
            }
        }
    }
}
