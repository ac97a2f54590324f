//! The experiment runners behind the CLI subcommands. Each one consumes an
//! `ExperimentConfig`, writes self-describing CSV files and reports the
//! count of numeric-validity flags raised along the way.

use super::config::{DepCombo, ExperimentConfig, ExperimentKind, RangeSpec, TailCombo};
use super::csvout::{CsvWriter, Field};
use super::engine::{mc_t0_draws, normal_quantiles, par_map_replicates};
use crate::bootstrap::{bootstrap_quantile, bootstrap_t_draws, min_resamples, quantile_rank, resample_statistic};
use crate::dist::{sample_ma_matrix, sample_signal_matrix, DistSpec, Hypothesis, MaStreamSpec};
use crate::ecdf::{ecdf_at, empirical_upper_quantile};
use crate::error::{Error, Result};
use crate::hc::{alpha_grid, hc_bootstrap, hc_normal, hc_oracle, default_alpha0, AlphaGrid, QuantileTable};
use crate::normal::{std_normal_cdf, std_normal_quantile};
use crate::phase::{classify_region, delta_formula, make_signal_config_with_p, rho_std, rho_theta};
use crate::prng::StreamKey;
use crate::stats::{mean_and_s2, Sample};
use crate::tail::{standardized_tail_approx, studentized_tail_approx, ApproxInput, TailForm};
use std::path::PathBuf;

/// What a run produced: output files, how many numeric-validity flags were
/// raised, and an optional human-readable table for stdout.
#[derive(Debug, Default)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub validity_flags: usize,
    pub table: Option<String>,
}

/// Execute the experiment named in the config.
pub fn run(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::TailCompare => run_tail_compare(cfg),
        ExperimentKind::BootQuantiles => run_boot_quantiles(cfg),
        ExperimentKind::HcHist => run_hc_hist(cfg),
        ExperimentKind::DepCdf => run_dep_cdf(cfg),
        ExperimentKind::PhasePlot => run_phase_plot(cfg),
        ExperimentKind::Calibrate => run_calibrate(cfg),
    }
}

fn experiment_label(kind: ExperimentKind) -> u64 {
    match kind {
        ExperimentKind::TailCompare => 1,
        ExperimentKind::BootQuantiles => 2,
        ExperimentKind::HcHist => 3,
        ExperimentKind::DepCdf => 4,
        ExperimentKind::PhasePlot => 5,
        ExperimentKind::Calibrate => 6,
    }
}

fn root_key(cfg: &ExperimentConfig) -> StreamKey {
    StreamKey::from_labels(cfg.seed, &[experiment_label(cfg.experiment)])
}

fn out_path(cfg: &ExperimentConfig, file: &str) -> PathBuf {
    cfg.output_dir.join(file)
}

fn default_x_grid() -> RangeSpec {
    RangeSpec { start: 0.0, stop: 4.0, step: 0.25 }
}

// ---------------------------------------------------------------- tail-compare

pub fn run_tail_compare(cfg: &ExperimentConfig) -> Result<RunReport> {
    let combos = cfg
        .tail_combos
        .clone()
        .unwrap_or_else(|| vec![TailCombo { dist: cfg.dist, n: cfg.n }]);
    let xs = cfg.x_grid.clone().unwrap_or_else(default_x_grid).values();
    let alphas =
        cfg.alpha_grid.clone().unwrap_or_else(|| vec![0.001, 0.005, 0.01, 0.05, 0.1, 0.2]);
    let m = cfg.replicates;
    let config_json = cfg.to_json();
    let mut flags = 0usize;

    let mut cdf_w = CsvWriter::create(
        &out_path(cfg, "tail_compare_cdf.csv"),
        &config_json,
        &["dist", "n", "x", "emp_cdf_t0", "emp_cdf_z0", "normal_cdf", "approx_t0", "approx_z0", "mc_se"],
    )?;
    let mut inv_w = CsvWriter::create(
        &out_path(cfg, "tail_compare_inv.csv"),
        &config_json,
        &["dist", "n", "alpha", "emp_q_t0", "emp_q_z0", "normal_q"],
    )?;

    for (ci, combo) in combos.iter().enumerate() {
        let key = root_key(cfg).child(ci as u64);
        let sampler = crate::dist::Sampler::new(&combo.dist)?;
        let n = combo.n;
        let pairs: Vec<(f64, f64)> = par_map_replicates(m, &key, |_, rep_key| {
            let mut g = rep_key.generator();
            let sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
            let (mean, s2) = mean_and_s2(&sample);
            let root_n = (n as f64).sqrt();
            let t0 =
                if s2 > 0.0 { root_n * mean / s2.sqrt() } else { f64::NEG_INFINITY };
            (t0, root_n * mean)
        });
        let mut t0s: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut z0s: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        t0s.sort_unstable_by(f64::total_cmp);
        z0s.sort_unstable_by(f64::total_cmp);

        let gamma = match crate::dist::standardized_skewness(&combo.dist) {
            Ok(g) => Some(g),
            Err(_) => {
                // No finite third moment: the closed-form columns are
                // unavailable for this law.
                flags += 1;
                None
            }
        };
        let label = combo.dist.label();
        for &x in &xs {
            let q_t0 = ecdf_at(&t0s, x);
            let q_z0 = ecdf_at(&z0s, x);
            let se_t0 = (q_t0 * (1.0 - q_t0) / m as f64).sqrt();
            let se_z0 = (q_z0 * (1.0 - q_z0) / m as f64).sqrt();
            let (approx_t0, approx_z0) = match gamma {
                Some(g) => {
                    let inp = ApproxInput::new(x, n, g)?;
                    let st = studentized_tail_approx(&inp, TailForm::Exponential);
                    let sz = standardized_tail_approx(&inp);
                    if !sz.valid && sz.value == 0.0 {
                        flags += 1;
                    }
                    (Field::Float(1.0 - st.value), Field::Float(1.0 - sz.value))
                }
                None => (Field::Missing, Field::Missing),
            };
            cdf_w.write_row(&[
                Field::Str(label.clone()),
                Field::UInt(n as u64),
                Field::Float(x),
                Field::Float(q_t0),
                Field::Float(q_z0),
                Field::Float(std_normal_cdf(x)?),
                approx_t0,
                approx_z0,
                Field::Float(se_t0.max(se_z0)),
            ])?;
        }
        for &alpha in &alphas {
            inv_w.write_row(&[
                Field::Str(label.clone()),
                Field::UInt(n as u64),
                Field::Float(alpha),
                Field::Float(empirical_upper_quantile(&t0s, alpha)),
                Field::Float(empirical_upper_quantile(&z0s, alpha)),
                Field::Float(std_normal_quantile(alpha)?),
            ])?;
        }
    }
    Ok(RunReport {
        files: vec![cdf_w.finish()?, inv_w.finish()?],
        validity_flags: flags,
        table: None,
    })
}

// -------------------------------------------------------------- boot-quantiles

pub fn run_boot_quantiles(cfg: &ExperimentConfig) -> Result<RunReport> {
    let n_set = cfg.n_set.clone().unwrap_or_else(|| vec![cfg.n]);
    let alphas = cfg.alpha_grid.clone().unwrap_or_else(|| vec![0.01, 0.05, 0.1, 0.2]);
    let min_alpha = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
    let need = min_resamples(min_alpha)?;
    if cfg.b_resamples < need {
        return Err(Error::InsufficientResamples { have: cfg.b_resamples, need, alpha: min_alpha });
    }
    let config_json = cfg.to_json();
    let mut w = CsvWriter::create(
        &out_path(cfg, "boot_quantiles.csv"),
        &config_json,
        &["n", "rep_id", "alpha", "boot_q", "oracle_q", "normal_q"],
    )?;
    let normal_q = normal_quantiles(&alphas)?;
    let mut flags = 0usize;

    for (ni, &n) in n_set.iter().enumerate() {
        let key = root_key(cfg).child(ni as u64);
        let oracle = mc_t0_draws(&cfg.dist, n, cfg.oracle_draws, &key.child(u64::MAX))?;
        let oracle_q: Vec<f64> =
            alphas.iter().map(|&a| empirical_upper_quantile(&oracle, a)).collect();

        let sampler = crate::dist::Sampler::new(&cfg.dist)?;
        let b = cfg.b_resamples;
        let per_rep: Vec<Result<(Vec<f64>, bool)>> =
            par_map_replicates(cfg.replicates, &key, |_, rep_key| {
                let mut g = rep_key.generator();
                let sample = Sample::new((0..n).map(|_| sampler.draw(&mut g)).collect())?;
                let draws = bootstrap_t_draws(&sample, b, &mut g)?;
                let qs = alphas
                    .iter()
                    .map(|&a| bootstrap_quantile(&draws, a))
                    .collect::<Result<Vec<f64>>>()?;
                Ok((qs, draws.is_reliable()))
            });
        for (rep, item) in per_rep.into_iter().enumerate() {
            let (qs, reliable) = item?;
            if !reliable {
                flags += 1;
            }
            for (ai, &alpha) in alphas.iter().enumerate() {
                w.write_row(&[
                    Field::UInt(n as u64),
                    Field::UInt(rep as u64),
                    Field::Float(alpha),
                    Field::Float(qs[ai]),
                    Field::Float(oracle_q[ai]),
                    Field::Float(normal_q[ai]),
                ])?;
            }
        }
    }
    Ok(RunReport { files: vec![w.finish()?], validity_flags: flags, table: None })
}

// -------------------------------------------------------------------- hc-hist

/// One scenario cell: per replicate, the three statistics on one fresh
/// matrix. Returned as (oracle, bootstrap, normal) value/argmax pairs.
pub struct HcCell {
    pub oracle: Vec<(f64, f64)>,
    pub boot: Vec<(f64, f64)>,
    pub normal: Vec<(f64, f64)>,
}

#[allow(clippy::too_many_arguments)]
pub fn run_hc_cell(
    dist: &DistSpec,
    scenario: &crate::phase::SignalConfig,
    hypothesis: Hypothesis,
    grid: &AlphaGrid,
    b: usize,
    replicates: usize,
    table: &QuantileTable,
    key: &StreamKey,
) -> Result<HcCell> {
    let rows: Vec<Result<[(f64, f64); 3]>> = par_map_replicates(replicates, key, |_, rep_key| {
        let mut g = rep_key.child(0).generator();
        let m = sample_signal_matrix(scenario, dist, hypothesis, &mut g)?;
        let orc = hc_oracle(&m, grid, table)?;
        let boo = hc_bootstrap(&m, grid, b, &rep_key.child(1))?;
        let nor = hc_normal(&m, grid)?;
        Ok([
            (orc.value, orc.argmax_alpha),
            (boo.value, boo.argmax_alpha),
            (nor.value, nor.argmax_alpha),
        ])
    });
    let mut cell = HcCell { oracle: Vec::new(), boot: Vec::new(), normal: Vec::new() };
    for row in rows {
        let [o, b_, n_] = row?;
        cell.oracle.push(o);
        cell.boot.push(b_);
        cell.normal.push(n_);
    }
    Ok(cell)
}

/// Shared oracle quantile table: Monte Carlo T0 quantiles under the true
/// law, one row reused by every identically distributed column.
pub fn oracle_table(
    dist: &DistSpec,
    n: usize,
    grid: &AlphaGrid,
    draws: usize,
    key: &StreamKey,
) -> Result<QuantileTable> {
    let t0 = mc_t0_draws(dist, n, draws, key)?;
    Ok(QuantileTable::Shared(
        (0..grid.len()).map(|i| empirical_upper_quantile(&t0, grid.alpha_at(i))).collect(),
    ))
}

pub fn run_hc_hist(cfg: &ExperimentConfig) -> Result<RunReport> {
    let p = cfg.derived_p()?;
    let theta = cfg.theta.unwrap_or(1.0);
    let alpha0 = cfg.grid.alpha0.unwrap_or_else(|| default_alpha0(cfg.n, p));
    let grid = alpha_grid(p, alpha0, cfg.grid.i_min)?;
    let need = min_resamples(grid.min_alpha())?;
    if cfg.b_resamples < need {
        return Err(Error::InsufficientResamples {
            have: cfg.b_resamples,
            need,
            alpha: grid.min_alpha(),
        });
    }
    let signal = cfg
        .signal
        .as_ref()
        .ok_or_else(|| Error::Config("hc-hist needs a signal block".into()))?;

    let key = root_key(cfg);
    let table = oracle_table(&cfg.dist, cfg.n, &grid, cfg.oracle_draws, &key.child(u64::MAX))?;

    let config_json = cfg.to_json();
    let mut w = CsvWriter::create(
        &out_path(cfg, "hc_hist.csv"),
        &config_json,
        &["variant", "hypothesis", "beta", "r", "replicate", "hc_value", "argmax_alpha"],
    )?;

    for (bi, &beta) in signal.betas.iter().enumerate() {
        let r = match signal.r {
            Some(r) => r,
            None => (signal.r_factor * rho_theta(beta, theta)?).min(1.0),
        };
        let scenario = make_signal_config_with_p(cfg.n, p, theta, beta, r)?;
        for (hi, hyp) in [Hypothesis::H0, Hypothesis::H1].into_iter().enumerate() {
            let cell_key = key.child(bi as u64).child(hi as u64);
            let cell = run_hc_cell(
                &cfg.dist,
                &scenario,
                hyp,
                &grid,
                cfg.b_resamples,
                cfg.replicates,
                &table,
                &cell_key,
            )?;
            let hyp_label = match hyp {
                Hypothesis::H0 => "h0",
                Hypothesis::H1 => "h1",
            };
            for (variant, values) in
                [("hc", &cell.oracle), ("hc_n", &cell.boot), ("hc_norm", &cell.normal)]
            {
                for (rep, &(value, argmax)) in values.iter().enumerate() {
                    w.write_row(&[
                        Field::Str(variant.to_string()),
                        Field::Str(hyp_label.to_string()),
                        Field::Float(beta),
                        Field::Float(r),
                        Field::UInt(rep as u64),
                        Field::Float(value),
                        Field::Float(argmax),
                    ])?;
                }
            }
        }
    }
    Ok(RunReport { files: vec![w.finish()?], validity_flags: 0, table: None })
}

// -------------------------------------------------------------------- dep-cdf

/// Joint and product cdf curves for one (p, theta) configuration, with
/// binomial / delta-method standard errors.
pub struct DepCurves {
    pub xs: Vec<f64>,
    pub joint: Vec<f64>,
    pub joint_se: Vec<f64>,
    pub product: Vec<f64>,
    pub product_se: Vec<f64>,
}

pub fn dep_cdf_curves(
    ma: &MaStreamSpec,
    n: usize,
    p: usize,
    xs: &[f64],
    replicates: usize,
    marginal_draws: usize,
    key: &StreamKey,
) -> Result<DepCurves> {
    // Joint: max_j T0^(j) per replicate of the dependent matrix.
    let maxes: Vec<Result<f64>> = par_map_replicates(replicates, &key.child(0), |_, rep_key| {
        let mut g = rep_key.generator();
        let m = sample_ma_matrix(ma, n, p, &mut g)?;
        let mut best = f64::NEG_INFINITY;
        for j in 0..p {
            let (mean, s2) = mean_and_s2(m.column(j));
            if s2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            best = best.max((n as f64).sqrt() * mean / s2.sqrt());
        }
        Ok(best)
    });
    let mut max_t = Vec::with_capacity(replicates);
    for v in maxes {
        max_t.push(v?);
    }
    max_t.sort_unstable_by(f64::total_cmp);

    // Marginal law of one column (p = 1 keeps the construction identical).
    let marg: Vec<Result<f64>> =
        par_map_replicates(marginal_draws, &key.child(1), |_, rep_key| {
            let mut g = rep_key.generator();
            let m = sample_ma_matrix(ma, n, 1, &mut g)?;
            let (mean, s2) = mean_and_s2(m.column(0));
            if s2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            Ok((n as f64).sqrt() * mean / s2.sqrt())
        });
    let mut marg_t = Vec::with_capacity(marginal_draws);
    for v in marg {
        marg_t.push(v?);
    }
    marg_t.sort_unstable_by(f64::total_cmp);

    let m_joint = replicates as f64;
    let m_marg = marginal_draws as f64;
    let mut out = DepCurves {
        xs: xs.to_vec(),
        joint: Vec::new(),
        joint_se: Vec::new(),
        product: Vec::new(),
        product_se: Vec::new(),
    };
    for &x in xs {
        let joint = ecdf_at(&max_t, x);
        out.joint.push(joint);
        out.joint_se.push((joint * (1.0 - joint) / m_joint).sqrt());
        let f1 = ecdf_at(&marg_t, x);
        let prod = f1.powi(p as i32);
        let se_f1 = (f1 * (1.0 - f1) / m_marg).sqrt();
        out.product.push(prod);
        out.product_se.push(p as f64 * f1.powi(p as i32 - 1) * se_f1);
    }
    Ok(out)
}

pub fn run_dep_cdf(cfg: &ExperimentConfig) -> Result<RunReport> {
    let ma_base = cfg
        .ma
        .ok_or_else(|| Error::Config("dep-cdf needs an ma block (innovation law)".into()))?;
    let combos = cfg
        .dep_combos
        .clone()
        .unwrap_or_else(|| vec![DepCombo { p: 100, theta: ma_base.theta }]);
    let xs = cfg
        .x_grid
        .clone()
        .unwrap_or(RangeSpec { start: 1.0, stop: 5.0, step: 0.1 })
        .values();
    let config_json = cfg.to_json();
    let mut w = CsvWriter::create(
        &out_path(cfg, "dep_cdf.csv"),
        &config_json,
        &["p", "theta", "x", "joint_cdf", "joint_se", "product_cdf", "product_se"],
    )?;
    for (ci, combo) in combos.iter().enumerate() {
        let ma = MaStreamSpec { theta: combo.theta, ..ma_base };
        let key = root_key(cfg).child(ci as u64);
        let curves = dep_cdf_curves(
            &ma,
            cfg.n,
            combo.p,
            &xs,
            cfg.replicates,
            cfg.marginal_draws,
            &key,
        )?;
        for (i, &x) in curves.xs.iter().enumerate() {
            w.write_row(&[
                Field::UInt(combo.p as u64),
                Field::Float(combo.theta),
                Field::Float(x),
                Field::Float(curves.joint[i]),
                Field::Float(curves.joint_se[i]),
                Field::Float(curves.product[i]),
                Field::Float(curves.product_se[i]),
            ])?;
        }
    }
    Ok(RunReport { files: vec![w.finish()?], validity_flags: 0, table: None })
}

// ------------------------------------------------------------------ phase-plot

pub fn run_phase_plot(cfg: &ExperimentConfig) -> Result<RunReport> {
    let betas = cfg
        .x_grid
        .clone()
        .unwrap_or(RangeSpec { start: 0.505, stop: 0.995, step: 0.005 })
        .values();
    let thetas = [0.25, 0.5, 0.75];
    let config_json = cfg.to_json();
    let mut w = CsvWriter::create(
        &out_path(cfg, "phase_plot.csv"),
        &config_json,
        &[
            "beta",
            "theta",
            "rho_theta",
            "rho_std",
            "r_boundary_i_ii",
            "r_boundary_ii_iii",
            "r_sample",
            "region",
            "delta",
        ],
    )?;
    for &theta in &thetas {
        for &beta in &betas {
            let rho = rho_theta(beta, theta)?;
            let r_sample = (1.5 * rho).min(1.0);
            let region = classify_region(beta, r_sample, theta)?;
            let delta = delta_formula(beta, r_sample, theta)?;
            w.write_row(&[
                Field::Float(beta),
                Field::Float(theta),
                Field::Float(rho),
                Field::Float(rho_std(beta)?),
                Field::Float((1.0 - theta) / 4.0),
                Field::Float(0.25),
                Field::Float(r_sample),
                Field::Str(format!("{region:?}")),
                Field::Float(delta),
            ])?;
        }
    }
    Ok(RunReport { files: vec![w.finish()?], validity_flags: 0, table: None })
}

// ------------------------------------------------------------------- calibrate

/// One calibration row: how often T0 exceeds the bootstrap and the normal
/// thresholds at level alpha.
#[derive(Clone, Copy, Debug)]
pub struct CalibrationRow {
    pub alpha: f64,
    pub p_hat_boot: f64,
    pub p_hat_norm: f64,
    pub se_boot: f64,
    pub se_norm: f64,
    pub m: usize,
}

pub fn calibrate_cell(
    dist: &DistSpec,
    n: usize,
    alphas: &[f64],
    b: usize,
    m: usize,
    independent: bool,
    key: &StreamKey,
) -> Result<Vec<CalibrationRow>> {
    let min_alpha = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
    let need = min_resamples(min_alpha)?;
    if b < need {
        return Err(Error::InsufficientResamples { have: b, need, alpha: min_alpha });
    }
    let sampler = crate::dist::Sampler::new(dist)?;
    let z: Vec<f64> = normal_quantiles(alphas)?;
    let per_rep: Vec<Result<(usize, usize, f64)>> = par_map_replicates(m, key, |_, rep_key| {
        let mut g = rep_key.generator();
        let quantile_sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
        let (mean, s2) = mean_and_s2(&quantile_sample);
        if s2 <= 0.0 {
            return Err(Error::DegenerateSample);
        }
        let t = if independent {
            let stat: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
            let (sm, ss2) = mean_and_s2(&stat);
            if ss2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            (n as f64).sqrt() * sm / ss2.sqrt()
        } else {
            (n as f64).sqrt() * mean / s2.sqrt()
        };
        let mut buf = vec![0.0; n];
        let mut below = 0usize;
        let mut b_eff = 0usize;
        for _ in 0..b {
            if let Some(ts) = resample_statistic(&quantile_sample, mean, &mut buf, &mut g) {
                b_eff += 1;
                if ts < t {
                    below += 1;
                }
            }
        }
        Ok((below, b_eff, t))
    });

    let mut boot_counts = vec![0usize; alphas.len()];
    let mut norm_counts = vec![0usize; alphas.len()];
    for item in per_rep {
        let (below, b_eff, t) = item?;
        for (ai, &alpha) in alphas.iter().enumerate() {
            if quantile_rank(b_eff, alpha) <= below {
                boot_counts[ai] += 1;
            }
            if t > z[ai] {
                norm_counts[ai] += 1;
            }
        }
    }
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(ai, &alpha)| {
            let pb = boot_counts[ai] as f64 / m as f64;
            let pn = norm_counts[ai] as f64 / m as f64;
            CalibrationRow {
                alpha,
                p_hat_boot: pb,
                p_hat_norm: pn,
                se_boot: (pb * (1.0 - pb) / m as f64).sqrt(),
                se_norm: (pn * (1.0 - pn) / m as f64).sqrt(),
                m,
            }
        })
        .collect())
}


pub fn run_calibrate(cfg: &ExperimentConfig) -> Result<RunReport> {
    let alphas = cfg.alpha_grid.clone().unwrap_or_else(|| vec![0.05]);
    let rows = calibrate_cell(
        &cfg.dist,
        cfg.n,
        &alphas,
        cfg.b_resamples,
        cfg.replicates,
        cfg.independent_sample,
        &root_key(cfg),
    )?;
    let config_json = cfg.to_json();
    let mut w = CsvWriter::create(
        &out_path(cfg, "calibrate.csv"),
        &config_json,
        &["alpha", "p_hat_boot", "p_hat_norm", "se_boot", "se_norm", "m", "mode"],
    )?;
    let mode = if cfg.independent_sample { "independent" } else { "shared" };
    let mut table = String::from("alpha     p_hat_boot  p_hat_norm  se\n");
    for row in &rows {
        w.write_row(&[
            Field::Float(row.alpha),
            Field::Float(row.p_hat_boot),
            Field::Float(row.p_hat_norm),
            Field::Float(row.se_boot),
            Field::Float(row.se_norm),
            Field::UInt(row.m as u64),
            Field::Str(mode.to_string()),
        ])?;
        table.push_str(&format!(
            "{:<9.4} {:<11.5} {:<11.5} {:.5}\n",
            row.alpha,
            row.p_hat_boot,
            row.p_hat_norm,
            row.se_boot.max(row.se_norm)
        ));
    }
    Ok(RunReport { files: vec![w.finish()?], validity_flags: 0, table: Some(table) })
}
