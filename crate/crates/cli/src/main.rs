//! `hct`: run the simulation experiments and write CSV outputs.
//!
//! Exit codes: 0 success, 2 config error, 3 when a run completed but raised
//! numeric-validity flags (results written, interpret with care).

use clap::{Args, Parser, Subcommand};
use hct_core::error::Error;
use hct_core::harness::{config::ExperimentKind, runners, ExperimentConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hct", version, about = "Studentised-mean tail and higher-criticism experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config JSON; built-in desk-scale defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Output directory override.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scale the design up to the sizes used in the source figures.
    #[arg(long)]
    paper_scale: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Empirical vs normal cdf of T0 and Z0 under heavy-tailed laws.
    TailCompare(RunArgs),
    /// Bootstrap quantile curves against oracle and normal quantiles.
    BootQuantiles(RunArgs),
    /// Higher-criticism histograms under H0 and sparse alternatives.
    HcHist(RunArgs),
    /// Joint vs product cdf of dependent t-statistics.
    DepCdf(RunArgs),
    /// Phase function, regions and growth exponent tables.
    PhasePlot(RunArgs),
    /// Bootstrap-t level calibration table.
    Calibrate(RunArgs),
}

impl Command {
    fn split(self) -> (ExperimentKind, RunArgs) {
        match self {
            Command::TailCompare(a) => (ExperimentKind::TailCompare, a),
            Command::BootQuantiles(a) => (ExperimentKind::BootQuantiles, a),
            Command::HcHist(a) => (ExperimentKind::HcHist, a),
            Command::DepCdf(a) => (ExperimentKind::DepCdf, a),
            Command::PhasePlot(a) => (ExperimentKind::PhasePlot, a),
            Command::Calibrate(a) => (ExperimentKind::Calibrate, a),
        }
    }
}

fn load_config(kind: ExperimentKind, args: &RunArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &args.config {
        Some(path) => {
            let cfg = ExperimentConfig::load(path)?;
            if cfg.experiment != kind {
                return Err(Error::Config(format!(
                    "config is for '{}' but the '{}' subcommand was invoked",
                    cfg.experiment.name(),
                    kind.name()
                )));
            }
            cfg
        }
        None => ExperimentConfig::default_for(kind),
    };
    if args.paper_scale {
        cfg.apply_paper_scale();
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();

    if let Some(threads) = args.threads {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()
        {
            eprintln!("hct: failed to size the thread pool: {e}");
            return ExitCode::from(1);
        }
    }

    let cfg = match load_config(kind, &args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("hct: {e}");
            return ExitCode::from(2);
        }
    };

    match runners::run(&cfg) {
        Ok(report) => {
            if let Some(table) = &report.table {
                print!("{table}");
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            if report.validity_flags > 0 {
                eprintln!(
                    "hct: {} numeric-validity flag(s) raised; inspect the outputs",
                    report.validity_flags
                );
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::Config(_)) => {
            eprintln!("hct: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("hct: {e}");
            ExitCode::from(1)
        }
    }
}
