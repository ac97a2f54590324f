//! Experiment configuration: one JSON document drives every subcommand.
//! Configs round-trip exactly and are echoed into every output header.

use crate::dist::{DistKind, DistSpec, MaStreamSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    TailCompare,
    BootQuantiles,
    HcHist,
    DepCdf,
    PhasePlot,
    Calibrate,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::TailCompare => "tail-compare",
            ExperimentKind::BootQuantiles => "boot-quantiles",
            ExperimentKind::HcHist => "hc-hist",
            ExperimentKind::DepCdf => "dep-cdf",
            ExperimentKind::PhasePlot => "phase-plot",
            ExperimentKind::Calibrate => "calibrate",
        }
    }
}

/// One (distribution, n) pairing for the tail comparison figure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailCombo {
    pub dist: DistSpec,
    pub n: usize,
}

/// Sparse-signal scenario parameters: each beta is run at
/// r = min(1, r_factor * rho_theta(beta)) unless r is given explicitly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalParams {
    pub betas: Vec<f64>,
    #[serde(default = "default_r_factor")]
    pub r_factor: f64,
    #[serde(default)]
    pub r: Option<f64>,
}

fn default_r_factor() -> f64 {
    1.0
}

/// Alpha-grid controls: alpha0 defaults to the n p^{-1} log p rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    #[serde(default)]
    pub alpha0: Option<f64>,
    #[serde(default = "default_i_min")]
    pub i_min: usize,
}

fn default_i_min() -> usize {
    1
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { alpha0: None, i_min: default_i_min() }
    }
}

/// Inclusive numeric range with a fixed step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut i = 0;
        loop {
            let v = self.start + self.step * i as f64;
            if v > self.stop + 1e-12 {
                break;
            }
            out.push(v);
            i += 1;
        }
        out
    }
}

/// One (p, theta) dependence configuration for the joint-vs-product study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepCombo {
    pub p: usize,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub n: usize,
    /// Feature count; derived as round(n^{1/theta}) when absent.
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub theta: Option<f64>,
    pub b_resamples: usize,
    pub replicates: usize,
    pub dist: DistSpec,
    #[serde(default)]
    pub ma: Option<MaStreamSpec>,
    #[serde(default)]
    pub signal: Option<SignalParams>,
    #[serde(default)]
    pub grid: GridParams,
    #[serde(default)]
    pub x_grid: Option<RangeSpec>,
    #[serde(default)]
    pub alpha_grid: Option<Vec<f64>>,
    /// Extra (dist, n) combos for tail-compare; overrides (dist, n).
    #[serde(default)]
    pub tail_combos: Option<Vec<TailCombo>>,
    /// Sample sizes for boot-quantiles.
    #[serde(default)]
    pub n_set: Option<Vec<usize>>,
    /// (p, theta) combos for dep-cdf.
    #[serde(default)]
    pub dep_combos: Option<Vec<DepCombo>>,
    /// Monte Carlo draws behind oracle quantile tables.
    #[serde(default = "default_oracle_draws")]
    pub oracle_draws: usize,
    /// Marginal draws for the product-cdf curve of dep-cdf.
    #[serde(default = "default_marginal_draws")]
    pub marginal_draws: usize,
    /// Calibrate mode: when true the test statistic comes from a sample
    /// independent of the one behind the bootstrap quantile; when false
    /// both come from one shared sample.
    #[serde(default = "default_true")]
    pub independent_sample: bool,
    pub output_dir: PathBuf,
}

fn default_oracle_draws() -> usize {
    1_000_000
}

fn default_marginal_draws() -> usize {
    500_000
}

fn default_true() -> bool {
    true
}

fn std_f55() -> DistSpec {
    DistSpec::standardized(DistKind::FisherF { d1: 5, d2: 5 })
}

impl ExperimentConfig {
    /// Desk-scale defaults per experiment.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let base = ExperimentConfig {
            schema: SCHEMA_VERSION,
            experiment: kind,
            seed: 20100,
            n: 50,
            p: None,
            theta: None,
            b_resamples: 2000,
            replicates: 200,
            dist: std_f55(),
            ma: None,
            signal: None,
            grid: GridParams::default(),
            x_grid: None,
            alpha_grid: None,
            tail_combos: None,
            n_set: None,
            dep_combos: None,
            oracle_draws: default_oracle_draws(),
            marginal_draws: default_marginal_draws(),
            independent_sample: true,
            output_dir: PathBuf::from("out"),
        };
        match kind {
            ExperimentKind::TailCompare => ExperimentConfig {
                replicates: 200_000,
                dist: DistSpec::standardized(DistKind::NormalAbsPow { m: 1 }),
                tail_combos: Some(vec![
                    TailCombo { dist: DistSpec::standardized(DistKind::NormalAbsPow { m: 1 }), n: 50 },
                    TailCombo { dist: DistSpec::standardized(DistKind::NormalAbsPow { m: 1 }), n: 100 },
                    TailCombo { dist: DistSpec::standardized(DistKind::NormalAbsPow { m: 5 }), n: 50 },
                    TailCombo { dist: DistSpec::standardized(DistKind::NormalAbsPow { m: 5 }), n: 100 },
                ]),
                x_grid: Some(RangeSpec { start: 0.0, stop: 4.0, step: 0.25 }),
                alpha_grid: Some(vec![0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2]),
                ..base
            },
            ExperimentKind::BootQuantiles => ExperimentConfig {
                replicates: 200,
                b_resamples: 10_000,
                n_set: Some(vec![50, 100, 250]),
                alpha_grid: Some(vec![0.01, 0.02, 0.05, 0.1, 0.15, 0.2]),
                oracle_draws: 200_000,
                ..base
            },
            ExperimentKind::HcHist => ExperimentConfig {
                n: 30,
                theta: Some(0.5),
                b_resamples: 9000,
                replicates: 200,
                grid: GridParams { alpha0: None, i_min: 10 },
                signal: Some(SignalParams {
                    betas: vec![0.5, 0.625, 0.75, 1.0],
                    r_factor: 1.0,
                    r: None,
                }),
                ..base
            },
            ExperimentKind::DepCdf => ExperimentConfig {
                replicates: 5000,
                ma: Some(MaStreamSpec {
                    theta: 0.5,
                    lag: 10,
                    innovation: DistSpec::standardized(DistKind::ParetoShapeScale {
                        shape: 5.0,
                        scale: 5.0,
                    }),
                }),
                dep_combos: Some(vec![
                    DepCombo { p: 100, theta: 0.5 },
                    DepCombo { p: 100, theta: 0.2 },
                    DepCombo { p: 10_000, theta: 0.2 },
                ]),
                x_grid: Some(RangeSpec { start: 1.0, stop: 5.0, step: 0.1 }),
                ..base
            },
            ExperimentKind::PhasePlot => ExperimentConfig {
                replicates: 1,
                x_grid: Some(RangeSpec { start: 0.505, stop: 0.995, step: 0.005 }),
                ..base
            },
            ExperimentKind::Calibrate => ExperimentConfig {
                replicates: 20_000,
                b_resamples: 2000,
                alpha_grid: Some(vec![0.05]),
                ..base
            },
        }
    }

    /// Scale the design up to the sizes used in the source figures.
    pub fn apply_paper_scale(&mut self) {
        match self.experiment {
            ExperimentKind::TailCompare => self.replicates = 1_000_000,
            ExperimentKind::BootQuantiles => self.oracle_draws = 10_000_000,
            ExperimentKind::HcHist => {
                self.n = 100;
                self.theta = Some(0.5);
                self.replicates = 1000;
                self.grid = GridParams { alpha0: None, i_min: 1 };
                self.oracle_draws = 10_000_000;
                // B from the 100/alpha rule at the smallest grid alpha.
                self.b_resamples = 1_000_000;
            }
            ExperimentKind::DepCdf => {
                self.replicates = 20_000;
                self.marginal_draws = 2_000_000;
            }
            ExperimentKind::PhasePlot => {}
            ExperimentKind::Calibrate => self.replicates = 100_000,
        }
    }

    /// Feature count: explicit p, else round(n^{1/theta}).
    pub fn derived_p(&self) -> Result<usize> {
        if let Some(p) = self.p {
            return Ok(p);
        }
        let theta = self.theta.ok_or_else(|| {
            Error::Config("config needs either p or theta to size the feature space".into())
        })?;
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::Config(format!("theta must lie in (0,1], got {theta}")));
        }
        Ok((self.n as f64).powf(1.0 / theta).round() as usize)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema {} (this build reads schema {SCHEMA_VERSION})",
                self.schema
            )));
        }
        if self.n < 2 {
            return Err(Error::Config(format!("n must be >= 2, got {}", self.n)));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if let Some(alphas) = &self.alpha_grid {
            if alphas.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
                return Err(Error::Config("alpha_grid entries must lie in (0,1)".into()));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{path:?}: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_exactly() {
        for kind in [
            ExperimentKind::TailCompare,
            ExperimentKind::BootQuantiles,
            ExperimentKind::HcHist,
            ExperimentKind::DepCdf,
            ExperimentKind::PhasePlot,
            ExperimentKind::Calibrate,
        ] {
            let cfg = ExperimentConfig::default_for(kind);
            let json = cfg.to_json();
            let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(cfg, back);
            assert_eq!(json, back.to_json());
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(&ExperimentConfig::default_for(ExperimentKind::HcHist).to_json())
                .unwrap();
        v["surprise"] = serde_json::json!(1);
        assert!(serde_json::from_value::<ExperimentConfig>(v).is_err());
    }

    #[test]
    fn derived_p_from_theta() {
        let mut cfg = ExperimentConfig::default_for(ExperimentKind::HcHist);
        assert_eq!(cfg.derived_p().unwrap(), 900);
        cfg.p = Some(128);
        assert_eq!(cfg.derived_p().unwrap(), 128);
    }

    #[test]
    fn schema_gate() {
        let mut cfg = ExperimentConfig::default_for(ExperimentKind::PhasePlot);
        cfg.schema = 2;
        assert!(cfg.validate().is_err());
    }
}
