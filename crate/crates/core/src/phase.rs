//! Detection-boundary geometry for sparse signal scenarios: the phase
//! function rho_theta(beta), its regions in the (beta, r) plane, the growth
//! exponent delta(beta, r, theta), and scenario construction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

fn check_beta_theta(beta: f64, theta: f64) -> Result<()> {
    if !(0.5..=1.0).contains(&beta) {
        return Err(Error::InvalidInput(format!("beta must lie in [1/2, 1], got {beta}")));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidInput(format!("theta must lie in [0, 1], got {theta}")));
    }
    Ok(())
}

/// The phase function rho_theta(beta): the detection boundary in the
/// sparsity-strength plane. Continuous in beta with two breakpoints, at
/// beta = 1/2 + (1-theta)/4 and beta = 3/4.
pub fn rho_theta(beta: f64, theta: f64) -> Result<f64> {
    check_beta_theta(beta, theta)?;
    let breakpoint = 0.5 + (1.0 - theta) / 4.0;
    Ok(if beta <= breakpoint {
        let root = ((1.0 - theta) / 2.0 + 0.5 - beta).sqrt();
        let d = (1.0 - theta).sqrt() - root;
        d * d
    } else if beta <= 0.75 {
        beta - 0.5
    } else {
        let d = 1.0 - (1.0 - beta).sqrt();
        d * d
    })
}

/// The standard phase function rho(beta) = rho_1(beta).
pub fn rho_std(beta: f64) -> Result<f64> {
    rho_theta(beta, 1.0)
}

/// Where a (beta, r) point sits relative to the detection boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseRegion {
    /// Detectable with r < (1-theta)/4.
    I,
    /// Detectable with (1-theta)/4 <= r <= 1/4.
    II,
    /// Detectable with r > 1/4.
    III,
    /// r <= rho_theta(beta): no test succeeds asymptotically.
    Undetectable,
    /// beta <= 1/2: the dense regime, outside the sparse-signal analysis.
    BelowBeta,
}

pub fn classify_region(beta: f64, r: f64, theta: f64) -> Result<PhaseRegion> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidInput(format!("r must lie in (0, 1], got {r}")));
    }
    if beta <= 0.5 {
        if !(beta > 0.0) {
            return Err(Error::InvalidInput(format!("beta must lie in (0, 1], got {beta}")));
        }
        return Ok(PhaseRegion::BelowBeta);
    }
    let rho = rho_theta(beta, theta)?;
    if r <= rho {
        return Ok(PhaseRegion::Undetectable);
    }
    Ok(if r < (1.0 - theta) / 4.0 {
        PhaseRegion::I
    } else if r <= 0.25 {
        PhaseRegion::II
    } else {
        PhaseRegion::III
    })
}

/// The raw piecewise exponent formula, selected by the same r thresholds as
/// the regions. Defined for any admissible (beta, r, theta); vanishes
/// exactly on the boundary r = rho_theta(beta).
pub fn delta_formula(beta: f64, r: f64, theta: f64) -> Result<f64> {
    check_beta_theta(beta, theta)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidInput(format!("r must lie in (0, 1], got {r}")));
    }
    Ok(if r < (1.0 - theta) / 4.0 {
        let d = (1.0 - theta).sqrt() - r.sqrt();
        0.5 - beta + (1.0 - theta) / 2.0 - d * d
    } else if r <= 0.25 {
        r - beta + 0.5
    } else {
        let d = 1.0 - r.sqrt();
        1.0 - beta - d * d
    })
}

/// Growth exponent of the higher-criticism statistic under the alternative;
/// requires a strictly detectable point r > rho_theta(beta).
pub fn delta_exponent(beta: f64, r: f64, theta: f64) -> Result<f64> {
    let rho = rho_theta(beta, theta)?;
    if r <= rho {
        return Err(Error::NotDetectable { r, rho });
    }
    delta_formula(beta, r, theta)
}

/// One sparse-mean testing scenario. p, the sparse fraction and the signal
/// strength all derive from (n, theta, beta, r).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalConfig {
    pub n: usize,
    pub theta: f64,
    pub p: usize,
    pub beta: f64,
    pub r: f64,
    pub eps_n: f64,
    pub tau_n: f64,
    pub k: usize,
}

/// Build the scenario: p = round(n^{1/theta}), eps_n = p^{-beta},
/// tau_n = sqrt(2 r log p), k = round(eps_n p).
pub fn make_signal_config(n: usize, theta: f64, beta: f64, r: f64) -> Result<SignalConfig> {
    if n < 2 {
        return Err(Error::Config(format!("n must be >= 2, got {n}")));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::Config(format!("theta must lie in (0, 1], got {theta}")));
    }
    if !(0.5..=1.0).contains(&beta) {
        return Err(Error::Config(format!("beta must lie in [1/2, 1], got {beta}")));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Config(format!("r must lie in (0, 1], got {r}")));
    }
    let p = (n as f64).powf(1.0 / theta).round() as usize;
    let eps_n = (p as f64).powf(-beta);
    let tau_n = (2.0 * r * (p as f64).ln()).sqrt();
    let k = (eps_n * p as f64).round() as usize;
    Ok(SignalConfig { n, theta, p, beta, r, eps_n, tau_n, k })
}

/// Explicit-p variant used by desk-scale runs where p is set directly
/// rather than via n^{1/theta}.
pub fn make_signal_config_with_p(
    n: usize,
    p: usize,
    theta: f64,
    beta: f64,
    r: f64,
) -> Result<SignalConfig> {
    let mut cfg = make_signal_config(n, theta, beta, r)?;
    if p != cfg.p {
        cfg.p = p;
        cfg.eps_n = (p as f64).powf(-beta);
        cfg.tau_n = (2.0 * r * (p as f64).ln()).sqrt();
        cfg.k = (cfg.eps_n * p as f64).round() as usize;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_theta_examples() {
        // beta = 3/4: both adjacent branches give 1/4, for any theta.
        for &theta in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            assert!((rho_theta(0.75, theta).unwrap() - 0.25).abs() < 1e-15);
        }
        let v = rho_theta(0.6, 0.5).unwrap();
        let want = (0.5f64.sqrt() - 0.15f64.sqrt()).powi(2);
        assert!((v - want).abs() < 1e-15);
        assert!((v - 0.1022774424948339).abs() < 1e-12);
        // theta = 0 collapses to (1 - sqrt(1-beta))^2 everywhere.
        for i in 1..20 {
            let beta = 0.5 + 0.025 * i as f64;
            let v = rho_theta(beta, 0.0).unwrap();
            let want = (1.0 - (1.0 - beta).sqrt()).powi(2);
            assert!((v - want).abs() < 1e-14, "beta {beta}");
        }
    }

    #[test]
    fn rho_std_examples() {
        assert!((rho_std(0.6).unwrap() - 0.1).abs() < 1e-15);
        assert!((rho_std(0.75).unwrap() - 0.25).abs() < 1e-15);
        assert!((rho_std(0.96).unwrap() - 0.64).abs() < 1e-12);
    }

    #[test]
    fn rho_theta_branch_continuity() {
        for i in 1..=19 {
            let theta = 0.05 * i as f64;
            let b1 = 0.5 + (1.0 - theta) / 4.0;
            for &b in &[b1, 0.75] {
                let below = rho_theta(b - 1e-9, theta).unwrap();
                let at = rho_theta(b, theta).unwrap();
                let above = rho_theta(b + 1e-9, theta).unwrap();
                assert!((below - at).abs() < 1e-8, "theta {theta} b {b}");
                assert!((above - at).abs() < 1e-8, "theta {theta} b {b}");
            }
        }
    }

    #[test]
    fn rho_theta_dominates_rho_std_and_decreases_in_theta() {
        for i in 1..50 {
            let beta = 0.5 + 0.01 * i as f64;
            let std = rho_std(beta).unwrap();
            let mut prev = f64::INFINITY;
            for j in 1..=19 {
                let theta = 0.05 * j as f64;
                let v = rho_theta(beta, theta).unwrap();
                assert!(v >= std - 1e-14, "rho_theta < rho_std at ({beta},{theta})");
                assert!(v <= prev + 1e-14, "rho_theta not nonincreasing at ({beta},{theta})");
                prev = v;
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_region(0.6, 0.11, 0.5).unwrap(), PhaseRegion::I);
        assert_eq!(classify_region(0.6, 0.2, 0.5).unwrap(), PhaseRegion::II);
        assert_eq!(classify_region(0.6, 0.3, 0.5).unwrap(), PhaseRegion::III);
        let rho = rho_theta(0.6, 0.5).unwrap();
        assert_eq!(classify_region(0.6, rho, 0.5).unwrap(), PhaseRegion::Undetectable);
        assert_eq!(classify_region(0.4, 0.3, 0.5).unwrap(), PhaseRegion::BelowBeta);
    }

    #[test]
    fn delta_zero_on_boundary() {
        for i in 1..50 {
            let beta = 0.5 + 0.01 * i as f64;
            for j in 0..=9 {
                let theta = 0.1 * j as f64 + 0.05;
                let rho = rho_theta(beta, theta).unwrap();
                if rho > 0.0 && rho <= 1.0 {
                    let d = delta_formula(beta, rho, theta).unwrap();
                    assert!(d.abs() < 1e-12, "delta({beta},{rho},{theta}) = {d}");
                }
            }
        }
    }

    #[test]
    fn delta_region_boundary_identities() {
        for &theta in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            for &beta in &[0.55, 0.6, 0.7] {
                // r = (1-theta)/4: case (i) limit equals case (ii) value.
                let r12 = (1.0 - theta) / 4.0;
                let from_ii = delta_formula(beta, r12, theta).unwrap();
                let want = 0.5 - beta + (1.0 - theta) / 4.0;
                assert!((from_ii - want).abs() < 1e-13);
                let from_i = delta_formula(beta, r12 - 1e-12, theta).unwrap();
                assert!((from_i - want).abs() < 1e-6);
                // r = 1/4: cases (ii) and (iii) both give 3/4 - beta.
                let at = delta_formula(beta, 0.25, theta).unwrap();
                assert!((at - (0.75 - beta)).abs() < 1e-13);
                let above = delta_formula(beta, 0.25 + 1e-12, theta).unwrap();
                assert!((above - (0.75 - beta)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn delta_detectability_guard() {
        let rho = rho_theta(0.6, 0.5).unwrap();
        assert!(matches!(
            delta_exponent(0.6, rho, 0.5),
            Err(Error::NotDetectable { .. })
        ));
        let d = delta_exponent(0.6, rho + 1e-6, 0.5).unwrap();
        assert!(d > 0.0 && d < 1e-4);
    }

    #[test]
    fn signal_config_examples() {
        let cfg = make_signal_config(100, 0.5, 0.75, 0.25).unwrap();
        assert_eq!(cfg.p, 10_000);
        assert!((cfg.eps_n - 1e-3).abs() < 1e-15);
        assert_eq!(cfg.k, 10);
        assert!((cfg.tau_n - 2.14597).abs() < 1e-5);
        // beta = 1 is accepted: one signal column.
        let cfg = make_signal_config(100, 0.5, 1.0, 1.0).unwrap();
        assert_eq!(cfg.k, 1);
        assert!(make_signal_config(100, 0.5, 0.4, 0.25).is_err());
        assert!(make_signal_config(100, 0.5, 0.75, 0.0).is_err());
    }
}
