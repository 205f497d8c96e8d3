use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use xlab_cli::{list_experiments, run, CliError, ExperimentConfig, Format};

/// Numerical experiments in harmonic analysis and approximation theory.
///
/// `xlab list` prints the registry.
#[derive(Parser, Debug)]
#[command(name = "xlab", version)]
struct Args {
    /// Experiment id, or `list`.
    experiment: String,
    /// Parameters as key=value.
    params: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json; each experiment has its own default.
    #[arg(long)]
    format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Config file with one `key = value` per line and `#` comments.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var("XLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match drive(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("xlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn drive(args: Args) -> Result<i32, CliError> {
    if args.experiment == "list" {
        for line in list_experiments() {
            println!("{line}");
        }
        return Ok(0);
    }
    let mut config = ExperimentConfig::new(&args.experiment).with_args(&args.params)?;
    if let Some(path) = &args.config {
        config = config.with_file_contents(&std::fs::read_to_string(path)?)?;
    }
    if args.seed != 0 {
        config.seed = args.seed;
    }
    config.out = args.out;
    config.format = args.format;
    let report = run(&config)?;
    eprintln!(
        "xlab {}: {} rows in {:.2?}, config {}",
        report.experiment,
        report.rows,
        report.wall_time,
        &report.config_hash[..12]
    );
    for f in &report.failures {
        eprintln!("failure: {f}");
    }
    Ok(report.exit_code())
}
