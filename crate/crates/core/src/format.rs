//! File formats.
//!
//! * Profile, text: whitespace-separated positive integers.
//! * Profile, structured: `{"citations": [5, 4, 3]}`; ids are array positions.
//! * Partition: a JSON array of arrays of item ids, e.g. `[[0], [1, 2]]`.
//! * 3-PARTITION instance: first line `m b`, then the `3m` numbers.
//! * Reduced instance: a profile text line followed by `k=<value>`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{MergePartition, Profile, ProfileError};
use crate::reduction::{ReducedInstance, ReductionError, ThreePartitionInstance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid number {token:?}")]
    InvalidNumber { token: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Instance(#[from] ReductionError),
    #[error("missing header line \"m b\"")]
    MissingHeader,
    #[error("missing \"k=<value>\" line")]
    MissingK,
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    citations: Vec<u64>,
}

fn parse_numbers(text: &str) -> Result<Vec<u64>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| FormatError::InvalidNumber { token: tok.to_string() })
        })
        .collect()
}

/// Parses either profile format; a leading `{` selects JSON.
pub fn parse_profile(text: &str) -> Result<Profile, FormatError> {
    if text.trim_start().starts_with('{') {
        let doc: ProfileDoc = serde_json::from_str(text)?;
        Ok(Profile::new(doc.citations)?)
    } else {
        Ok(Profile::new(parse_numbers(text)?)?)
    }
}

pub fn profile_to_text(profile: &Profile) -> String {
    let line: Vec<String> = profile.citations().iter().map(u64::to_string).collect();
    format!("{}\n", line.join(" "))
}

pub fn profile_to_json(profile: &Profile) -> serde_json::Value {
    serde_json::json!({ "citations": profile.citations() })
}

pub fn parse_partition(text: &str) -> Result<MergePartition, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn partition_to_json(partition: &MergePartition) -> String {
    serde_json::to_string(partition).expect("partitions always serialize")
}

pub fn parse_3partition(text: &str) -> Result<ThreePartitionInstance, FormatError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = parse_numbers(lines.next().ok_or(FormatError::MissingHeader)?)?;
    let [m, b] = header[..] else {
        return Err(FormatError::MissingHeader);
    };
    let rest: Vec<&str> = lines.collect();
    let numbers = parse_numbers(&rest.join(" "))?;
    Ok(ThreePartitionInstance::new(numbers, m, b)?)
}

pub fn format_3partition(instance: &ThreePartitionInstance) -> String {
    let nums: Vec<String> = instance.numbers().iter().map(u64::to_string).collect();
    format!("{} {}\n{}\n", instance.m(), instance.b(), nums.join(" "))
}

pub fn format_reduced(reduced: &ReducedInstance) -> String {
    format!("{}k={}\n", profile_to_text(&reduced.profile), reduced.k)
}

/// Reads the reduced-instance format back into a profile and its target.
pub fn parse_reduced(text: &str) -> Result<(Profile, u64), FormatError> {
    let mut profile_text = String::new();
    let mut k = None;
    for line in text.lines() {
        match line.trim().strip_prefix("k=") {
            Some(v) => {
                k = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| FormatError::InvalidNumber { token: v.to_string() })?,
                )
            }
            None => {
                profile_text.push_str(line);
                profile_text.push('\n');
            }
        }
    }
    Ok((parse_profile(&profile_text)?, k.ok_or(FormatError::MissingK)?))
}
