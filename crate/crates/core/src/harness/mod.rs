//! Monte Carlo experiment engine: configuration, deterministic parallel
//! estimation, CSV persistence and the runners behind the CLI subcommands.

pub mod config;
pub mod csvout;
pub mod engine;
pub mod runners;

pub use config::{ExperimentConfig, ExperimentKind};
pub use engine::{estimate_exceedance, estimate_t0_z0_exceedance, McEstimate, StatSelector};
pub use runners::{run, RunReport};
