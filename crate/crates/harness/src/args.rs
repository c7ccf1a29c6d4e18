use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "hamgen", version, about = "Hamilton-generated graph checks, classification and surveys")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the Hamilton cycles span the cycle space.
    #[command(args_override_self = true)]
    Check(CheckArgs),
    /// Run the dense / two-cluster / bipartite classification and print the ledger.
    #[command(args_override_self = true)]
    Classify(ClassifyArgs),
    /// Sample Dirac-threshold Hamilton-connected graphs and check each one.
    #[command(args_override_self = true)]
    Survey(SurveyArgs),
    /// Write a graph as an edge list.
    #[command(args_override_self = true)]
    Construct(ConstructArgs),
    /// (m, d)-connectivity and short vertex-disjoint paths.
    #[command(args_override_self = true)]
    Paths(PathsArgs),
    /// Maximum matching between two vertex sets, with a König cover.
    #[command(args_override_self = true)]
    Matching(MatchingArgs),
    /// Maximum linear forest of an induced subgraph.
    #[command(args_override_self = true)]
    Forest(ForestArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SourceArgs {
    /// Edge-list file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// One of a1, a2, a3.
    #[arg(long)]
    pub construction: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Sample a random graph on this many vertices.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge probability of the sampler.
    #[arg(long, default_value_t = 0.55)]
    pub p: f64,
    /// Sampler attempts before giving up.
    #[arg(long, default_value_t = 1000)]
    pub attempts: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CommonArgs {
    /// Flat key=value file; keys are the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Node cap for every Hamilton search (overrides HAMGEN_BUDGET_NODES).
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub max_cycles: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ParamArgs {
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    /// Largest number of (A, B) pairs searched exhaustively.
    #[arg(long)]
    pub density_pairs: Option<u128>,
    #[arg(long)]
    pub density_restarts: Option<u32>,
    #[arg(long)]
    pub density_seed: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Skip the R-subgraph search on non-generated graphs.
    #[arg(long)]
    pub skip_r: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Use this vertex set as A directly instead of searching for a sparse pair.
    #[arg(long)]
    pub a: Option<String>,
    /// Lemma shape evaluated with --a: biclique or bipartite.
    #[arg(long, default_value = "biclique")]
    pub shape: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SurveyArgs {
    /// Comma-separated odd orders, e.g. 7,9,11.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.55)]
    pub p: f64,
    #[arg(long, default_value_t = 1000)]
    pub attempts: u32,
    /// CSV output path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Edge-list output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PathsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pairs to join, e.g. 0-5,1-6.
    #[arg(long)]
    pub pairs: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: usize,
    /// Cap on deletion sets examined by the connectivity check.
    #[arg(long, default_value_t = hamgen_core::structures::DEFAULT_MD_LIMIT)]
    pub limit: u128,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MatchingArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated side X.
    #[arg(long)]
    pub x: String,
    /// Comma-separated side Y; the complement of X when absent.
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ForestArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated vertex subset; all vertices when absent.
    #[arg(long)]
    pub vertices: Option<String>,
}

/// Splices the keys of any `--config <file>` in front of the explicit flags,
/// so flags given on the command line win.
pub fn expand_config(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let p = args.get(i + 1).ok_or_else(|| CliError::Usage("--config needs a path".into()))?;
            path = Some(PathBuf::from(p));
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    if args.len() < 2 {
        return Ok(args);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let mut spliced = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        if key == "config" {
            return Err(CliError::Usage("config files cannot nest".into()));
        }
        match value {
            "true" => spliced.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                spliced.push(OsString::from(format!("--{key}")));
                spliced.push(OsString::from(value));
            }
        }
    }
    let mut out = args[..2].to_vec();
    out.extend(spliced);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

pub fn parse_list(s: &str, what: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad {what} entry `{t}`"))))
        .collect()
}

pub fn parse_pairs(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || CliError::Usage(format!("bad pair `{t}`, expected u-v"));
            let (a, b) = t.split_once('-').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}
