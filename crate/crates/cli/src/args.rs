use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hmerge::achievability::{DEFAULT_NODE_BUDGET, DEFAULT_ORACLE_CAP};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "hmerge", version, about = "H-index merge manipulation: improve, maximize, reduce")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,

    /// Maximum number of search states before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,

    /// Largest instance handed to exhaustive solvers.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP, value_parser = positive_usize)]
    pub oracle_cap: usize,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    #[value(alias = "json")]
    Structured,
}

/// Where a profile comes from: a file, an inline list, or stdin.
#[derive(Args, Debug)]
pub struct ProfileInput {
    /// Profile file (text or JSON). Reads stdin when omitted.
    pub path: Option<PathBuf>,

    /// Inline whitespace-separated citation counts.
    #[arg(long, conflicts_with = "path", allow_hyphen_values = true)]
    pub values: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the H-index of a profile.
    Hindex(ProfileInput),
    /// Decide whether merging can raise the H-index and print a witness.
    Improve(ProfileInput),
    /// Decide whether merging can reach H-index K.
    Achieve {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: ProfileInput,
    },
    /// Compute the largest H-index reachable by merging.
    Maximize {
        #[command(flatten)]
        input: ProfileInput,
        /// Also report the iterated-improvement lower bound.
        #[arg(long)]
        greedy: bool,
    },
    /// Reduce a 3-PARTITION instance file to a profile and target k.
    Reduce3p {
        file: PathBuf,
        /// Write the reduced instance here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve both sides of the reduction and report agreement.
    Verify3p { file: PathBuf },
    /// Cross-check the fast solvers against exhaustive enumeration.
    OracleCheck {
        /// Check every multiset within the caps instead of random profiles.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 9)]
        max_size: usize,
        #[arg(long, default_value_t = 12)]
        max_value: u64,
        /// Number of random profiles.
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Random citation profile.
    Profile {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Dist::Uniform)]
        dist: Dist,
        /// Uniform lower bound.
        #[arg(long, default_value_t = 1)]
        lo: u64,
        /// Uniform upper bound.
        #[arg(long, default_value_t = 20)]
        hi: u64,
        /// Zipf exponent.
        #[arg(long, default_value_t = 1.2)]
        s: f64,
        /// Zipf maximum value.
        #[arg(long, default_value_t = 100)]
        max: u64,
    },
    /// Random 3-PARTITION instance with numbers strictly between b/4 and b/2.
    #[command(name = "3p")]
    ThreePartition {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        b: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Uniform,
    Zipf,
}
