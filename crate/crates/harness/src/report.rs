use std::io::Write;
use std::path::Path;

use hamgen_core::constructions::RNG_NAME;
use hamgen_core::{edgelist, Graph};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

/// SHA-256 of the canonical edge-list text.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(edgelist::write(g).as_bytes()))
}

pub fn graph_summary(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.m(), "min_degree": g.min_degree(), "hash": graph_hash(g) })
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ExperimentConfig,
    pub rng: &'static str,
    pub records: Vec<Value>,
    pub summary: Value,
}

impl Report {
    pub fn new(config: ExperimentConfig, records: Vec<Value>, summary: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            config,
            rng: RNG_NAME,
            records,
            summary,
        }
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        write_file(path, text.as_bytes())
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}
