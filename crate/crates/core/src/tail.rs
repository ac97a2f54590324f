//! Closed-form tail, quantile and power approximations for Studentised and
//! standardized means under skewness.
//!
//! The Studentised tail uses the exponential skewness-correction form and the
//! standardized tail the first-order polynomial form; a mode flag exposes the
//! polynomial Studentised variant for comparison plots. Everything is
//! evaluated in log space so extreme thresholds never underflow.

use crate::error::{Error, Result};
use crate::normal::{std_normal_quantile, std_normal_upper_tail};

/// Inputs shared by the tail approximations. gamma is the population
/// skewness E(X^3) of the standardized law; c an optional noncentral shift.
#[derive(Clone, Copy, Debug)]
pub struct ApproxInput {
    pub x: f64,
    pub n: usize,
    pub gamma: f64,
    pub c: f64,
}

impl ApproxInput {
    pub fn new(x: f64, n: usize, gamma: f64) -> Result<Self> {
        Self::with_shift(x, n, gamma, 0.0)
    }

    pub fn with_shift(x: f64, n: usize, gamma: f64, c: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be >= 2, got {n}")));
        }
        if !x.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidInput("x and gamma must be finite".into()));
        }
        if !(c >= 0.0) {
            return Err(Error::InvalidInput(format!("shift c must be >= 0, got {c}")));
        }
        Ok(ApproxInput { x, n, gamma, c })
    }

    /// The expansions hold uniformly for x up to about n^{1/6}; we flag the
    /// point as inside the accuracy region when |x|^3 / sqrt(n) <= 1.
    pub fn in_expansion_region(&self) -> bool {
        self.x.powi(3).abs() <= (self.n as f64).sqrt()
    }
}

/// Which correction form to use for the Studentised tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TailForm {
    /// (1 - Phi(x)) exp(-x^3 gamma / (3 sqrt n)): the default.
    #[default]
    Exponential,
    /// (1 - Phi(x)) (1 - x^3 gamma / (3 sqrt n)): the first-order polynomial.
    Polynomial,
}

/// A tail approximation value with its log and a validity indicator; the
/// indicator goes false outside the expansion's accuracy region or when a
/// polynomial correction factor turns nonpositive.
#[derive(Clone, Copy, Debug)]
pub struct TailApprox {
    pub value: f64,
    pub log_value: f64,
    pub valid: bool,
}

fn from_log(log_value: f64, valid: bool) -> TailApprox {
    TailApprox { value: log_value.exp(), log_value, valid }
}

/// P(T0 > x) approximation.
pub fn studentized_tail_approx(inp: &ApproxInput, form: TailForm) -> TailApprox {
    let tail = std_normal_upper_tail(inp.x).expect("finite x");
    let corr = inp.x.powi(3) * inp.gamma / (3.0 * (inp.n as f64).sqrt());
    match form {
        TailForm::Exponential => from_log(tail.log_value - corr, inp.in_expansion_region()),
        TailForm::Polynomial => {
            let factor = 1.0 - corr;
            if factor <= 0.0 {
                TailApprox { value: 0.0, log_value: f64::NEG_INFINITY, valid: false }
            } else {
                from_log(tail.log_value + factor.ln(), inp.in_expansion_region())
            }
        }
    }
}

/// P(Z0 > x) approximation: (1 - Phi(x)) (1 + x^3 gamma / (6 sqrt n)).
pub fn standardized_tail_approx(inp: &ApproxInput) -> TailApprox {
    let tail = std_normal_upper_tail(inp.x).expect("finite x");
    let factor = 1.0 + inp.x.powi(3) * inp.gamma / (6.0 * (inp.n as f64).sqrt());
    if factor <= 0.0 {
        return TailApprox { value: 0.0, log_value: f64::NEG_INFINITY, valid: false };
    }
    from_log(tail.log_value + factor.ln(), inp.in_expansion_region())
}

/// P(T_c > x) approximation:
/// (1 - Phi(x - c)) exp(-(2x^3 - 3cx^2 + c^3) gamma / (6 sqrt n)).
pub fn noncentral_tail_approx(inp: &ApproxInput) -> TailApprox {
    let (x, c) = (inp.x, inp.c);
    let tail = std_normal_upper_tail(x - c).expect("finite x");
    let poly = 2.0 * x.powi(3) - 3.0 * c * x * x + c.powi(3);
    let corr = poly * inp.gamma / (6.0 * (inp.n as f64).sqrt());
    // The shift is inside the uniform range only for 0 <= c < x.
    let shift_ok = c == 0.0 || c < x;
    from_log(tail.log_value - corr, inp.in_expansion_region() && shift_ok)
}

/// Skewness-corrected upper quantile of T0:
/// t_alpha ~ z_alpha (1 - gamma z_alpha / (3 sqrt n)).
pub fn skew_corrected_quantile(alpha: f64, n: usize, gamma: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0, 0.5], got {alpha}")));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    let z = std_normal_quantile(alpha)?;
    Ok(z * (1.0 - gamma * z / (3.0 * (n as f64).sqrt())))
}

/// Rejection-probability approximation under the shift c:
/// alpha exp{c (3 t_a^2 - c^2) gamma / (6 sqrt n)} (1-Phi(t_a - c))/(1-Phi(t_a)),
/// with t_a the skew-corrected quantile.
pub fn power_approx(alpha: f64, c: f64, n: usize, gamma: f64) -> Result<TailApprox> {
    if !(c >= 0.0) {
        return Err(Error::InvalidInput(format!("shift c must be >= 0, got {c}")));
    }
    let t = skew_corrected_quantile(alpha, n, gamma)?;
    if c == 0.0 {
        return Ok(TailApprox { value: alpha, log_value: alpha.ln(), valid: true });
    }
    let corr = c * (3.0 * t * t - c * c) * gamma / (6.0 * (n as f64).sqrt());
    let log_ratio = std_normal_upper_tail(t - c)?.log_value - std_normal_upper_tail(t)?.log_value;
    let log_value = alpha.ln() + corr + log_ratio;
    Ok(TailApprox { value: log_value.exp(), log_value, valid: c < t })
}
