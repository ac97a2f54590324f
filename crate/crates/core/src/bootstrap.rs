//! Bootstrap-t resampling and upper-tail quantile estimation.
//!
//! For a sample X the resampled statistic is T0* = sqrt(n)(X*bar - Xbar)/S*,
//! centred at the original mean and Studentised by the resample sd. The
//! empirical law of the draws approximates the sampling law of T0, and its
//! upper order statistics estimate the test quantiles t_alpha.

use crate::error::{Error, Result};
use crate::prng::Generator;
use crate::stats::{mean_and_s2, Sample};

/// Sorted bootstrap statistics for one sample. Resamples whose empirical
/// variance is zero have no defined statistic; they are discarded and
/// counted, and a degenerate share above 1% flags the estimate unreliable.
#[derive(Clone, Debug)]
pub struct BootstrapDraws {
    sorted_t: Vec<f64>,
    n_degenerate: usize,
    b_requested: usize,
}

impl BootstrapDraws {
    pub fn sorted_t(&self) -> &[f64] {
        &self.sorted_t
    }

    pub fn n_degenerate(&self) -> usize {
        self.n_degenerate
    }

    pub fn b_requested(&self) -> usize {
        self.b_requested
    }

    pub fn effective_len(&self) -> usize {
        self.sorted_t.len()
    }

    pub fn is_reliable(&self) -> bool {
        (self.n_degenerate as f64) <= 0.01 * self.b_requested as f64
    }

    /// Assemble from raw draws; test-only escape hatch for known sequences.
    pub fn from_draws(mut draws: Vec<f64>, n_degenerate: usize) -> Self {
        let b_requested = draws.len() + n_degenerate;
        draws.sort_unstable_by(f64::total_cmp);
        BootstrapDraws { sorted_t: draws, n_degenerate, b_requested }
    }
}

/// Smallest number of resamples that resolves quantiles down to alpha_min:
/// ceil(100 / alpha_min).
pub fn min_resamples(alpha_min: f64) -> Result<usize> {
    if !(alpha_min > 0.0 && alpha_min <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "alpha_min must lie in (0, 0.5], got {alpha_min}"
        )));
    }
    Ok((100.0 / alpha_min).ceil() as usize)
}

/// One bootstrap statistic from `n` uniform with-replacement picks, or None
/// for a degenerate resample.
#[inline]
pub(crate) fn resample_statistic(
    values: &[f64],
    center: f64,
    buf: &mut [f64],
    g: &mut Generator,
) -> Option<f64> {
    let n = values.len();
    for slot in buf.iter_mut() {
        *slot = values[g.uniform_index(n)];
    }
    let (mean, s2) = mean_and_s2(buf);
    if s2 <= 0.0 {
        return None;
    }
    Some((n as f64).sqrt() * (mean - center) / s2.sqrt())
}

/// B bootstrap-t draws for one sample, sorted ascending.
pub fn bootstrap_t_draws(x: &Sample, b: usize, g: &mut Generator) -> Result<BootstrapDraws> {
    if b == 0 {
        return Err(Error::InvalidInput("need B >= 1 resamples".into()));
    }
    let values = x.values();
    let (center, s2) = mean_and_s2(values);
    if s2 <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    let mut buf = vec![0.0; values.len()];
    let mut sorted_t = Vec::with_capacity(b);
    let mut n_degenerate = 0usize;
    for _ in 0..b {
        match resample_statistic(values, center, &mut buf, g) {
            Some(t) => sorted_t.push(t),
            None => n_degenerate += 1,
        }
    }
    sorted_t.sort_unstable_by(f64::total_cmp);
    Ok(BootstrapDraws { sorted_t, n_degenerate, b_requested: b })
}

/// Index (1-based) of the order statistic serving as the upper alpha
/// quantile among b_eff draws: ceil((1 - alpha) b_eff).
#[inline]
pub(crate) fn quantile_rank(b_eff: usize, alpha: f64) -> usize {
    (((1.0 - alpha) * b_eff as f64).ceil() as usize).clamp(1, b_eff)
}

/// Upper-tail quantile estimate: the smallest order statistic t with the
/// fraction of draws above t at most alpha. Nonincreasing in alpha.
pub fn bootstrap_quantile(d: &BootstrapDraws, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let b_eff = d.effective_len();
    let need = (1.0 / alpha).ceil() as usize;
    if b_eff < need {
        return Err(Error::InsufficientResamples { have: b_eff, need, alpha });
    }
    Ok(d.sorted_t[quantile_rank(b_eff, alpha) - 1])
}
