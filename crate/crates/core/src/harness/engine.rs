//! Monte Carlo building blocks. Every replicate draws from a stream keyed by
//! its index, so estimates are bit-identical at any thread count; float
//! aggregation happens serially over index-ordered buffers.

use crate::bootstrap::{quantile_rank, resample_statistic};
use crate::dist::{DistSpec, Sampler};
use crate::error::{Error, Result};
use crate::normal::std_normal_quantile;
use crate::prng::StreamKey;
use crate::stats::mean_and_s2;
use rayon::prelude::*;

/// A Monte Carlo probability estimate with its binomial standard error.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub estimate: f64,
    pub se: f64,
    pub m: usize,
}

impl McEstimate {
    pub fn from_count(count: usize, m: usize) -> Self {
        let estimate = count as f64 / m as f64;
        McEstimate { estimate, se: (estimate * (1.0 - estimate) / m as f64).sqrt(), m }
    }
}

/// Which exceedance probability to estimate.
#[derive(Clone, Copy, Debug)]
pub enum StatSelector {
    /// P(T0 > x)
    T0,
    /// P(Z0 > x) with known sigma
    Z0 { sigma: f64 },
    /// P(T_c > x)
    Tc { c: f64 },
    /// P(T0 > t-hat_alpha), bootstrap threshold from B resamples; the
    /// statistic sample is independent of the quantile sample when
    /// `independent`, or the very same sample otherwise.
    T0VsBootQuantile { alpha: f64, b: usize, independent: bool },
}

/// Ordered parallel map over replicates: replicate i runs under key.child(i).
pub fn par_map_replicates<T, F>(m: usize, key: &StreamKey, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, StreamKey) -> T + Sync,
{
    (0..m).into_par_iter().map(|i| f(i, key.child(i as u64))).collect()
}

fn statistic_of_sample(values: &[f64], sel: &StatSelector) -> Result<f64> {
    let (mean, s2) = mean_and_s2(values);
    let n = values.len() as f64;
    match sel {
        StatSelector::T0 | StatSelector::T0VsBootQuantile { .. } => {
            if s2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            Ok(n.sqrt() * mean / s2.sqrt())
        }
        StatSelector::Z0 { sigma } => {
            if !(*sigma > 0.0) {
                return Err(Error::InvalidInput(format!("sigma must be > 0, got {sigma}")));
            }
            Ok(n.sqrt() * mean / sigma)
        }
        StatSelector::Tc { c } => {
            if s2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            let s = s2.sqrt();
            Ok(n.sqrt() * mean / s + c / s)
        }
    }
}

/// Unbiased Monte Carlo estimate of an exceedance probability.
///
/// For the plain statistics the threshold is `x_or_alpha`; for the
/// bootstrap-calibrated selector the level alpha lives in the selector and
/// `x_or_alpha` is ignored.
pub fn estimate_exceedance(
    sel: &StatSelector,
    dist: &DistSpec,
    n: usize,
    x_or_alpha: f64,
    m: usize,
    key: &StreamKey,
) -> Result<McEstimate> {
    if m < 100 {
        return Err(Error::Config(format!("need m >= 100 replicates, got {m}")));
    }
    let sampler = Sampler::new(dist)?;
    let outcomes: Vec<Result<bool>> = par_map_replicates(m, key, |_, rep_key| {
        let mut g = rep_key.generator();
        match sel {
            StatSelector::T0VsBootQuantile { alpha, b, independent } => {
                let quantile_sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
                let (mean, s2) = mean_and_s2(&quantile_sample);
                if s2 <= 0.0 {
                    return Err(Error::DegenerateSample);
                }
                let mut buf = vec![0.0; n];
                let mut below = 0usize;
                let mut b_eff = 0usize;
                let t = if *independent {
                    let stat_sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
                    statistic_of_sample(&stat_sample, &StatSelector::T0)?
                } else {
                    statistic_of_sample(&quantile_sample, &StatSelector::T0)?
                };
                for _ in 0..*b {
                    if let Some(ts) = resample_statistic(&quantile_sample, mean, &mut buf, &mut g)
                    {
                        b_eff += 1;
                        if ts < t {
                            below += 1;
                        }
                    }
                }
                let need = (1.0 / alpha).ceil() as usize;
                if b_eff < need {
                    return Err(Error::InsufficientResamples {
                        have: b_eff,
                        need,
                        alpha: *alpha,
                    });
                }
                // T0 > t-hat_alpha  <=>  #\{draws < T0\} >= rank(alpha).
                Ok(quantile_rank(b_eff, *alpha) <= below)
            }
            _ => {
                let sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
                Ok(statistic_of_sample(&sample, sel)? > x_or_alpha)
            }
        }
    });
    let mut count = 0usize;
    for o in outcomes {
        count += o? as usize;
    }
    Ok(McEstimate::from_count(count, m))
}

/// Joint estimate of P(T0 > x) and P(Z0 > x) (sigma = 1) from shared
/// samples, halving the sampling cost of side-by-side comparisons.
pub fn estimate_t0_z0_exceedance(
    dist: &DistSpec,
    n: usize,
    x: f64,
    m: usize,
    key: &StreamKey,
) -> Result<(McEstimate, McEstimate)> {
    if m < 100 {
        return Err(Error::Config(format!("need m >= 100 replicates, got {m}")));
    }
    let sampler = Sampler::new(dist)?;
    let pairs: Vec<(bool, bool)> = par_map_replicates(m, key, |_, rep_key| {
        let mut g = rep_key.generator();
        let sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
        let (mean, s2) = mean_and_s2(&sample);
        let root_n = (n as f64).sqrt();
        let t0 = if s2 > 0.0 { root_n * mean / s2.sqrt() } else { f64::NEG_INFINITY };
        let z0 = root_n * mean;
        (t0 > x, z0 > x)
    });
    let t_count = pairs.iter().filter(|p| p.0).count();
    let z_count = pairs.iter().filter(|p| p.1).count();
    Ok((McEstimate::from_count(t_count, m), McEstimate::from_count(z_count, m)))
}

/// Sorted Monte Carlo draws of T0 under `dist`, for oracle quantile tables.
pub fn mc_t0_draws(dist: &DistSpec, n: usize, m: usize, key: &StreamKey) -> Result<Vec<f64>> {
    let sampler = Sampler::new(dist)?;
    let mut draws: Vec<f64> = par_map_replicates(m, key, |_, rep_key| {
        let mut g = rep_key.generator();
        let sample: Vec<f64> = (0..n).map(|_| sampler.draw(&mut g)).collect();
        let (mean, s2) = mean_and_s2(&sample);
        if s2 > 0.0 {
            (n as f64).sqrt() * mean / s2.sqrt()
        } else {
            f64::NEG_INFINITY
        }
    });
    draws.retain(|v| v.is_finite());
    draws.sort_unstable_by(f64::total_cmp);
    Ok(draws)
}

/// z_alpha thresholds for a whole grid of levels.
pub fn normal_quantiles(alphas: &[f64]) -> Result<Vec<f64>> {
    alphas.iter().map(|&a| std_normal_quantile(a)).collect()
}
