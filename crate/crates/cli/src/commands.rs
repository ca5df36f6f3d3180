use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use hmerge::format::{self, FormatError};
use hmerge::{
    brute_force_max, can_improve, classify, gen_3partition_instance, gen_profile, greedy_lower_bound,
    group_sums, h_index, improving_partition, max_achievable, reduce_3partition,
    verify_reduction, CitationDistribution, MergePartition, Profile, ReductionError, SearchConfig,
    SearchError,
};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, Dist, GenCommand, OutputFormat, ProfileInput};

pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_CHECK_FAILED: u8 = 5;

/// Command output plus whether a check it ran came out negative.
pub struct Output {
    pub text: String,
    pub check_failed: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, check_failed: false }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Instance(inner) => inner.into(),
            other => CliError::new(EXIT_PARSE, other.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::BudgetExceeded { .. } => EXIT_BUDGET,
            SearchError::OracleCapExceeded { .. } => EXIT_INFEASIBLE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Search(inner) => inner.into(),
            ReductionError::MalformedInstance(_) => CliError::new(EXIT_PARSE, e.to_string()),
            other => CliError::new(EXIT_INFEASIBLE, other.to_string()),
        }
    }
}

fn read_path(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_profile(input: &ProfileInput) -> Result<Profile, CliError> {
    let text = match (&input.values, &input.path) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) => read_path(path)?,
        (None, None) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::new(EXIT_IO, format!("stdin: {e}")))?;
            buf
        }
    };
    Ok(format::parse_profile(&text)?)
}

/// Renders groups as `{5, 4} {3}` using citation values.
fn show_groups(profile: &Profile, partition: &MergePartition) -> String {
    partition
        .groups
        .iter()
        .map(|g| {
            let vals: Vec<String> = g.iter().map(|&id| profile.citations_of(id).to_string()).collect();
            format!("{{{}}}", vals.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn structured<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify3p { file } => verify3p(cli, file),
        Command::OracleCheck { exhaustive, max_size, max_value, count } => {
            let config = SearchConfig { node_budget: cli.node_budget, oracle_cap: cli.oracle_cap };
            let report = oracle_check(*exhaustive, *max_size, *max_value, *count, cli.seed, &config)?;
            let text = if cli.format == OutputFormat::Human {
                let mut out = String::new();
                writeln!(
                    out,
                    "{}: {} profiles checked, {} improvement mismatches, {} maximum mismatches",
                    if report.pass { "PASS" } else { "FAIL" },
                    report.checked,
                    report.improve_mismatches,
                    report.max_mismatches
                )
                .unwrap();
                if let Some(f) = &report.first_failure {
                    writeln!(out, "first failure: {f:?}").unwrap();
                }
                out
            } else {
                structured(&report)
            };
            Ok(Output { text, check_failed: !report.pass })
        }
        _ => run_simple(cli).map(Output::from),
    }
}

fn run_simple(cli: &Cli) -> Result<String, CliError> {
    let config = SearchConfig {
        node_budget: cli.node_budget,
        oracle_cap: cli.oracle_cap,
    };
    let human = cli.format == OutputFormat::Human;
    match &cli.command {
        Command::Hindex(input) => {
            let p = load_profile(input)?;
            let h = h_index(&p);
            Ok(if human { format!("{h}\n") } else { structured(&json!({ "h_index": h })) })
        }
        Command::Improve(input) => {
            let p = load_profile(input)?;
            let cls = classify(&p);
            let witness = improving_partition(&p);
            if human {
                let mut out = String::new();
                match &witness {
                    Some(w) => {
                        writeln!(out, "improvable: h {} -> {}", cls.h, w.achieved).unwrap();
                        writeln!(out, "partition: {}", show_groups(&p, &w.partition)).unwrap();
                    }
                    None => writeln!(out, "not improvable (h = {})", cls.h).unwrap(),
                }
                Ok(out)
            } else {
                Ok(structured(&json!({
                    "h_index": cls.h,
                    "improvable": witness.is_some(),
                    "classification": cls,
                    "witness": witness,
                })))
            }
        }
        Command::Achieve { k, input } => {
            let p = load_profile(input)?;
            let start = Instant::now();
            let decision = hmerge::achievability::decide(&p, *k, &config)?;
            let elapsed = start.elapsed();
            if human {
                let mut out = String::new();
                match &decision.certificate {
                    Some(cert) => {
                        writeln!(out, "YES: h-index {k} is achievable").unwrap();
                        writeln!(out, "partition: {}", show_groups(&p, &cert.partition)).unwrap();
                        writeln!(out, "witness groups: {:?}", cert.witness_group_ids).unwrap();
                    }
                    None => writeln!(out, "NO: h-index {k} is not achievable").unwrap(),
                }
                writeln!(out, "nodes explored: {}, time: {elapsed:.2?}", decision.nodes_explored).unwrap();
                Ok(out)
            } else {
                Ok(structured(&json!({
                    "k": k,
                    "achievable": decision.certificate.is_some(),
                    "certificate": decision.certificate,
                    "telemetry": {
                        "nodes_explored": decision.nodes_explored,
                        "elapsed_ms": elapsed.as_secs_f64() * 1e3,
                    },
                })))
            }
        }
        Command::Maximize { input, greedy } => {
            let p = load_profile(input)?;
            let start = Instant::now();
            let best = max_achievable(&p, &config)?;
            let elapsed = start.elapsed();
            let lower = greedy.then(|| greedy_lower_bound(&p));
            if human {
                let mut out = String::new();
                writeln!(out, "{}", best.value).unwrap();
                writeln!(out, "h-index: {}", h_index(&p)).unwrap();
                writeln!(out, "partition: {}", show_groups(&p, &best.certificate.partition)).unwrap();
                if let Some((v, _)) = &lower {
                    writeln!(out, "greedy lower bound: {v}").unwrap();
                }
                writeln!(out, "nodes explored: {}, time: {elapsed:.2?}", best.nodes_explored).unwrap();
                Ok(out)
            } else {
                Ok(structured(&json!({
                    "h_index": h_index(&p),
                    "value": best.value,
                    "certificate": best.certificate,
                    "greedy": lower.map(|(value, partition)| json!({ "value": value, "partition": partition })),
                    "telemetry": {
                        "nodes_explored": best.nodes_explored,
                        "elapsed_ms": elapsed.as_secs_f64() * 1e3,
                    },
                })))
            }
        }
        Command::Reduce3p { file, output } => {
            let inst = format::parse_3partition(&read_path(file)?)?;
            let reduced = reduce_3partition(&inst);
            let text = format::format_reduced(&reduced);
            let body = if human {
                text
            } else {
                structured(&json!({
                    "citations": reduced.profile.citations(),
                    "k": reduced.k,
                    "shifted": reduced.shifted,
                    "padding_count": reduced.padding_count,
                    "in_range": inst.in_range(),
                }))
            };
            match output {
                Some(path) => {
                    fs::write(path, &body)
                        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(body),
            }
        }
        Command::Verify3p { .. } | Command::OracleCheck { .. } => unreachable!("handled in run"),
        Command::Gen(GenCommand::Profile { n, dist, lo, hi, s, max }) => {
            let distribution = match dist {
                Dist::Uniform => CitationDistribution::Uniform { lo: *lo, hi: *hi },
                Dist::Zipf => CitationDistribution::Zipf { s: *s, max: *max },
            };
            let p = gen_profile(*n, distribution, cli.seed)?;
            Ok(if human {
                format::profile_to_text(&p)
            } else {
                structured(&format::profile_to_json(&p))
            })
        }
        Command::Gen(GenCommand::ThreePartition { m, b }) => {
            let inst = gen_3partition_instance(*m, *b, cli.seed)?;
            Ok(if human {
                format::format_3partition(&inst)
            } else {
                structured(&inst)
            })
        }
    }
}

fn verify3p(cli: &Cli, file: &Path) -> Result<Output, CliError> {
    let config = SearchConfig { node_budget: cli.node_budget, oracle_cap: cli.oracle_cap };
    let human = cli.format == OutputFormat::Human;
            let inst = format::parse_3partition(&read_path(file)?)?;
            let report = verify_reduction(&inst, &config)?;
            if human {
                let mut out = String::new();
                let verdict = |b: bool| if b { "YES" } else { "NO" };
                writeln!(out, "3-PARTITION (m={}, b={}): {}", report.m, report.b, verdict(report.three_partition.is_some())).unwrap();
                writeln!(out, "reduced achievability (k={}): {} (max {})", report.k, verdict(report.achievable), report.max_value).unwrap();
                writeln!(out, "agreement: {}", if report.agree { "yes" } else { "NO" }).unwrap();
                if let Some(blocks) = &report.three_partition {
                    let shown: Vec<String> = blocks
                        .iter()
                        .map(|b| {
                            let v: Vec<String> = b.iter().map(|&i| inst.numbers()[i].to_string()).collect();
                            format!("{{{}}}", v.join(", "))
                        })
                        .collect();
                    writeln!(out, "blocks: {}", shown.join(" ")).unwrap();
                }
                Ok(Output { text: out, check_failed: !report.agree })
            } else {
                Ok(Output { text: structured(&report), check_failed: !report.agree })
            }
        }

#[derive(Serialize, Debug)]
pub struct OracleReport {
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub checked: usize,
    pub improve_mismatches: usize,
    pub max_mismatches: usize,
    pub first_failure: Option<Vec<u64>>,
    pub pass: bool,
}

fn multisets(max_len: usize, max_value: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(v) = stack.pop() {
        if v.len() < max_len {
            let top = v.last().copied().unwrap_or(max_value);
            for c in 1..=top {
                let mut w: Vec<u64> = v.clone();
                w.push(c);
                stack.push(w);
            }
        }
        out.push(v);
    }
    out.sort();
    out
}

fn oracle_check(
    exhaustive: bool,
    max_size: usize,
    max_value: u64,
    count: u64,
    seed: u64,
    config: &SearchConfig,
) -> Result<OracleReport, CliError> {
    if max_size > config.oracle_cap {
        return Err(SearchError::OracleCapExceeded { size: max_size, cap: config.oracle_cap }.into());
    }
    if max_value == 0 {
        return Err(CliError::new(EXIT_INFEASIBLE, "max value must be positive"));
    }
    let corpus: Vec<Profile> = if exhaustive {
        multisets(max_size, max_value)
            .into_iter()
            .map(|v| Profile::new(v).expect("values are positive"))
            .collect()
    } else {
        (0..count)
            .map(|i| {
                let s = seed.wrapping_add(i);
                let n = (s.wrapping_mul(0x9e37_79b9) >> 7) % (max_size as u64 + 1);
                gen_profile(n as usize, CitationDistribution::Uniform { lo: 1, hi: max_value }, s)
            })
            .collect::<Result<_, _>>()?
    };
    let mut report = OracleReport {
        mode: if exhaustive { "exhaustive" } else { "random" },
        seed: (!exhaustive).then_some(seed),
        checked: corpus.len(),
        improve_mismatches: 0,
        max_mismatches: 0,
        first_failure: None,
        pass: true,
    };
    for p in &corpus {
        let oracle = brute_force_max(p, config.oracle_cap)?;
        let h = h_index(p);
        let improve_ok = can_improve(p) == (oracle.value > h)
            && improving_partition(p).is_none_or(|w| {
                group_sums(p, &w.partition).is_ok() && w.achieved > h
            });
        let best = max_achievable(p, config)?;
        let max_ok = best.value == oracle.value
            && best.certificate.verify(p)
            && greedy_lower_bound(p).0 <= best.value;
        if !improve_ok {
            report.improve_mismatches += 1;
        }
        if !max_ok {
            report.max_mismatches += 1;
        }
        if (!improve_ok || !max_ok) && report.first_failure.is_none() {
            report.first_failure = Some(p.citations());
        }
    }
    report.pass = report.improve_mismatches == 0 && report.max_mismatches == 0;
    Ok(report)
}
