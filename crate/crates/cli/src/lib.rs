//! Driver for the xlab experiments: configuration, deterministic runs and
//! CSV/JSON emission.

pub mod config;
pub mod experiments;
pub mod table;

use std::path::Path;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;

pub use config::{ExperimentConfig, Format, Params, Value};
pub use experiments::{registry, Experiment};
pub use table::{Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numeric(xlab_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub experiment: String,
    pub config_hash: String,
    pub rows: usize,
    pub wall_time: Duration,
    pub failures: Vec<String>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

pub fn find_experiment(id: &str) -> Result<Experiment, CliError> {
    registry().into_iter().find(|e| e.id == id).ok_or_else(|| {
        CliError::Usage(format!("unknown experiment {id:?}; run `xlab list` for the registry"))
    })
}

/// `id  description  [topics]`, one line per registered experiment.
pub fn list_experiments() -> Vec<String> {
    registry().iter().map(|e| format!("{:<22} {} [{}]", e.id, e.description, e.topics)).collect()
}

/// Runs an experiment and renders its output. The rendering starts with a
/// header line carrying the config hash and a timestamp; everything after it
/// depends only on the config and the seed.
pub fn run_to_string(config: &ExperimentConfig) -> Result<(RunReport, String), CliError> {
    let exp = find_experiment(&config.experiment)?;
    let params = Params::resolve(&config.params, exp.defaults)?;
    let start = Instant::now();
    let table = match (exp.run)(&params, config.seed) {
        Ok(t) => t,
        Err(CliError::Numeric(e)) => {
            let mut t = Table::new(&["error"]);
            t.fail(e.to_string());
            t
        }
        Err(e) => return Err(e),
    };
    let wall_time = start.elapsed();
    let hash = config.content_hash();
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let text = match config.format.unwrap_or(exp.format) {
        Format::Csv => table.to_csv(&format!(
            "xlab {} config={hash} seed={} generated={stamp}",
            exp.id, config.seed
        )),
        Format::Json => {
            let params: serde_json::Map<String, serde_json::Value> =
                config.params.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
            table.to_json(json!({
                "experiment": exp.id,
                "config_hash": hash,
                "seed": config.seed,
                "params": params,
            }))
        }
    };
    let report = RunReport {
        experiment: exp.id.to_string(),
        config_hash: hash,
        rows: table.rows.len(),
        wall_time,
        failures: table.failures.clone(),
    };
    Ok((report, text))
}

/// [`run_to_string`], writing to `config.out` when set and to stdout
/// otherwise.
pub fn run(config: &ExperimentConfig) -> Result<RunReport, CliError> {
    let (report, text) = run_to_string(config)?;
    match &config.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report)
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)
}
