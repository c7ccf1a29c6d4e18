use std::path::{Path, PathBuf};

use hamgen_core::classification::{DensityBudget, ThresholdParams};
use hamgen_core::constructions::{construction_a, random_dirac_hc_graph, Variant};
use hamgen_core::hamilton::{Rational, SearchBudget, BUDGET_ENV};
use hamgen_core::{edgelist, Graph};
use serde::Serialize;

use crate::args::{CommonArgs, ParamArgs, SourceArgs};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    File { path: PathBuf },
    Construction { variant: u8, k: usize },
    Random { n: usize, seed: u64, p: f64, attempts: u32 },
}

impl GraphSource {
    pub fn from_args(a: &SourceArgs) -> CliResult<Self> {
        let given = a.file.is_some() as u8 + a.construction.is_some() as u8 + a.random.is_some() as u8;
        if given != 1 {
            return Err(CliError::Usage("exactly one of --file, --construction, --random is required".into()));
        }
        if let Some(path) = &a.file {
            return Ok(GraphSource::File { path: path.clone() });
        }
        if let Some(name) = &a.construction {
            let variant = match name.as_str() {
                "a1" => 1,
                "a2" => 2,
                "a3" => 3,
                other => return Err(CliError::Usage(format!("unknown construction `{other}`, expected a1, a2 or a3"))),
            };
            return Ok(GraphSource::Construction { variant, k: a.k });
        }
        if !(0.0..=1.0).contains(&a.p) {
            return Err(CliError::Usage(format!("--p must lie in [0, 1], got {}", a.p)));
        }
        if a.attempts == 0 {
            return Err(CliError::Usage("--attempts must be positive".into()));
        }
        Ok(GraphSource::Random { n: a.random.expect("counted above"), seed: a.seed, p: a.p, attempts: a.attempts })
    }

    pub fn load(&self) -> CliResult<Graph> {
        match self {
            GraphSource::File { path } => read_graph(path),
            GraphSource::Construction { variant, k } => {
                let v = Variant::from_index(*variant).expect("validated variant");
                Ok(construction_a(*k, v)?.graph)
            }
            GraphSource::Random { n, seed, p, attempts } => random_dirac_hc_graph(*n, *seed, *attempts, *p)?
                .ok_or_else(|| CliError::Data(format!("sampler found no graph in {attempts} attempts"))),
        }
    }
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(edgelist::parse(&text)?)
}

/// Node budget: `--budget-nodes`, then `HAMGEN_BUDGET_NODES`, else unlimited.
pub fn search_budget(c: &CommonArgs) -> CliResult<SearchBudget> {
    let env = match std::env::var(BUDGET_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a positive integer, got `{s}`")))?,
        ),
        Err(_) => None,
    };
    let max_nodes = c.budget_nodes.or(env);
    if max_nodes == Some(0) || c.max_cycles == Some(0) {
        return Err(CliError::Usage("budgets must be positive".into()));
    }
    Ok(SearchBudget { max_cycles: c.max_cycles, max_nodes })
}

fn rational(name: &str, s: &Option<String>, default: Rational) -> CliResult<Rational> {
    match s {
        None => Ok(default),
        Some(text) => text
            .trim()
            .parse::<Rational>()
            .map_err(|_| CliError::Usage(format!("--{name} must be a fraction like 1/10, got `{text}`"))),
    }
}

pub fn threshold_params(a: &ParamArgs) -> CliResult<ThresholdParams> {
    let d = ThresholdParams::default();
    let p = ThresholdParams {
        alpha: rational("alpha", &a.alpha, d.alpha)?,
        beta: rational("beta", &a.beta, d.beta)?,
        eta: rational("eta", &a.eta, d.eta)?,
        sigma: rational("sigma", &a.sigma, d.sigma)?,
        gamma: rational("gamma", &a.gamma, d.gamma)?,
    };
    p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(p)
}

pub fn density_budget(a: &ParamArgs) -> CliResult<DensityBudget> {
    let d = DensityBudget::default();
    let b = DensityBudget {
        max_pairs: a.density_pairs.unwrap_or(d.max_pairs),
        restarts: a.density_restarts.unwrap_or(d.restarts),
        seed: a.density_seed.unwrap_or(d.seed),
    };
    if b.max_pairs == 0 || b.restarts == 0 {
        return Err(CliError::Usage("density budgets must be positive".into()));
    }
    Ok(b)
}

/// The resolved inputs of one run, echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub task: &'static str,
    pub source: Option<GraphSource>,
    pub params: Option<ThresholdParams>,
    pub budget: SearchBudget,
    pub density: Option<DensityBudget>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    /// Subcommand-specific settings.
    pub extra: serde_json::Value,
}
