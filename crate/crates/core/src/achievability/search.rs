//! Exact bin-covering search shared by the achievability solver and the
//! 3-PARTITION solver.
//!
//! Bins are filled one at a time. Each bin opens with the largest unassigned
//! item and takes further items in descending order until its sum reaches
//! `cover`; a bin never exceeds `cap`. Failed `(remaining multiset, bins left)`
//! states are memoised.

use std::collections::HashSet;

use thiserror::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_ORACLE_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search exceeded the node budget of {budget} states")]
    BudgetExceeded { budget: u64 },
    #[error("instance of size {size} exceeds the oracle cap of {cap}")]
    OracleCapExceeded { size: usize, cap: usize },
}

/// Limits applied to exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub oracle_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Outcome of a covering search: bins as indices into the input slice.
#[derive(Debug)]
pub(crate) struct Covering {
    pub bins: Vec<Vec<usize>>,
}

pub(crate) struct BinCover<'a> {
    /// Values sorted descending; `order[i]` maps back to the caller's index.
    values: Vec<u64>,
    order: Vec<usize>,
    cover: u64,
    cap: u64,
    used: Vec<bool>,
    failed: HashSet<(Vec<u64>, usize)>,
    nodes: &'a mut u64,
    budget: u64,
}

impl<'a> BinCover<'a> {
    /// `cover` is the minimum sum of a bin, `cap` the maximum.
    pub fn new(values: &[u64], cover: u64, cap: u64, nodes: &'a mut u64, budget: u64) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
        BinCover {
            values: order.iter().map(|&i| values[i]).collect(),
            order,
            cover,
            cap,
            used: vec![false; values.len()],
            failed: HashSet::new(),
            nodes,
            budget,
        }
    }

    /// Finds `bins` disjoint groups, each with sum in `[cover, cap]`.
    pub fn solve(mut self, bins: usize) -> Result<Option<Covering>, SearchError> {
        if bins == 0 {
            return Ok(Some(Covering { bins: Vec::new() }));
        }
        let mut open: Vec<Vec<usize>> = Vec::with_capacity(bins);
        let remaining: u64 = self.values.iter().sum();
        if self.fill_next_bin(bins, remaining, &mut open)? {
            let bins = open
                .into_iter()
                .map(|b| b.into_iter().map(|i| self.order[i]).collect())
                .collect();
            Ok(Some(Covering { bins }))
        } else {
            Ok(None)
        }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(SearchError::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn remaining_key(&self) -> Vec<u64> {
        self.values
            .iter()
            .zip(&self.used)
            .filter(|(_, &u)| !u)
            .map(|(&v, _)| v)
            .collect()
    }

    fn fill_next_bin(
        &mut self,
        bins_left: usize,
        remaining: u64,
        done: &mut Vec<Vec<usize>>,
    ) -> Result<bool, SearchError> {
        if bins_left == 0 {
            return Ok(true);
        }
        self.tick()?;
        if remaining < self.cover.saturating_mul(bins_left as u64) {
            return Ok(false);
        }
        let key = (self.remaining_key(), bins_left);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let Some(first) = self.used.iter().position(|u| !u) else {
            return Ok(false);
        };
        if self.values[first] > self.cap {
            // largest item fits nowhere; with exact bins every item must be placed
            self.failed.insert(key);
            return Ok(false);
        }
        self.used[first] = true;
        let mut bin = vec![first];
        let sum = self.values[first];
        let tail = remaining - sum;
        let found = if sum >= self.cover {
            done.push(bin);
            let ok = self.fill_next_bin(bins_left - 1, tail, done)?;
            if !ok {
                done.pop();
            }
            ok
        } else {
            self.extend_bin(first + 1, sum, &mut bin, bins_left, tail, done)?
        };
        self.used[first] = false;
        if !found {
            self.failed.insert(key);
        }
        Ok(found)
    }

    /// Adds items with index `>= from` to `bin` until it reaches `cover`.
    /// `rest` is the sum of all unassigned items outside the bin.
    fn extend_bin(
        &mut self,
        from: usize,
        sum: u64,
        bin: &mut Vec<usize>,
        bins_left: usize,
        rest: u64,
        done: &mut Vec<Vec<usize>>,
    ) -> Result<bool, SearchError> {
        self.tick()?;
        // the bin and the bins after it all draw from `rest`
        if sum + rest < self.cover.saturating_mul(bins_left as u64) {
            return Ok(false);
        }
        let reachable: u64 = (from..self.values.len())
            .filter(|&j| !self.used[j])
            .map(|j| self.values[j])
            .sum();
        if sum + reachable < self.cover {
            return Ok(false);
        }
        let mut last_tried: Option<u64> = None;
        for j in from..self.values.len() {
            if self.used[j] {
                continue;
            }
            let v = self.values[j];
            if last_tried == Some(v) || sum + v > self.cap {
                continue;
            }
            last_tried = Some(v);
            self.used[j] = true;
            bin.push(j);
            let next = sum + v;
            let found = if next >= self.cover {
                done.push(bin.clone());
                let ok = self.fill_next_bin(bins_left - 1, rest - v, done)?;
                if !ok {
                    done.pop();
                }
                ok
            } else {
                self.extend_bin(j + 1, next, bin, bins_left, rest - v, done)?
            };
            bin.pop();
            self.used[j] = false;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
