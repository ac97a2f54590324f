//! Studentised-mean tail analysis, bootstrap-t quantile calibration and
//! bootstrap-t higher criticism for sparse signal detection, together with
//! the Monte Carlo harness that drives the simulation studies.

// Domain guards are written as `!(x > 0.0)` on purpose: NaN must fail the
// check and land in the rejection branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bootstrap;
pub mod dist;
pub mod ecdf;
pub mod error;
pub mod harness;
pub mod hc;
pub mod normal;
pub mod phase;
pub mod prng;
pub mod stats;
pub mod tail;

pub use bootstrap::BootstrapDraws;
pub use dist::{DistKind, DistSpec, FeatureMatrix, Hypothesis, MaStreamSpec};
pub use error::{Error, Result};
pub use harness::{ExperimentConfig, ExperimentKind};
pub use hc::{AlphaGrid, HcResult, HcVariant};
pub use normal::TailValue;
pub use phase::{PhaseRegion, SignalConfig};
pub use prng::{Generator, StreamKey};
pub use stats::{MomentSummary, Sample};
