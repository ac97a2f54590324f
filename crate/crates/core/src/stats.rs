//! Sample moments and the test statistics built from them.
//!
//! The variance uses divisor n (not n-1); the downstream tail expansions are
//! stated for that normalization.

use crate::error::{Error, Result};

/// An observation vector of at least two finite values.
#[derive(Clone, Debug)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "sample needs n >= 2, got n = {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("sample contains non-finite value {bad}")));
        }
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Mean, biased variance and the Studentised third/fourth moment ratios of a
/// sample. The moment ratios are undefined for constant samples.
#[derive(Clone, Copy, Debug)]
pub struct MomentSummary {
    pub n: usize,
    pub mean: f64,
    pub s2: f64,
    pub gamma3_hat: Option<f64>,
    pub gamma4_hat: Option<f64>,
}

/// Single pass over the data, accumulating central moments with the usual
/// stable update recurrences (Welford, extended to third and fourth order).
pub fn summarize(x: &Sample) -> MomentSummary {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    let mut count = 0.0;
    for &v in x.values() {
        count += 1.0;
        let delta = v - mean;
        let delta_n = delta / count;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * (count - 1.0);
        mean += delta_n;
        m4 += term1 * delta_n2 * (count * count - 3.0 * count + 3.0) + 6.0 * delta_n2 * m2
            - 4.0 * delta_n * m3;
        m3 += term1 * delta_n * (count - 2.0) - 3.0 * delta_n * m2;
        m2 += term1;
    }
    let n = x.len();
    let s2 = m2 / count;
    let (gamma3_hat, gamma4_hat) = if s2 > 0.0 {
        let s = s2.sqrt();
        (Some(m3 / count / (s2 * s)), Some(m4 / count / (s2 * s2)))
    } else {
        (None, None)
    };
    MomentSummary { n, mean, s2, gamma3_hat, gamma4_hat }
}

/// Mean and biased variance only; the hot path for resampling loops.
#[inline]
pub(crate) fn mean_and_s2(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mut sum = 0.0;
    for &v in values {
        sum += v;
    }
    let mean = sum / n;
    let mut ss = 0.0;
    for &v in values {
        let d = v - mean;
        ss += d * d;
    }
    (mean, ss / n)
}

/// T0 = sqrt(n) X-bar / S.
pub fn t_statistic(x: &Sample) -> Result<f64> {
    let (mean, s2) = mean_and_s2(x.values());
    if s2 <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    Ok((x.len() as f64).sqrt() * mean / s2.sqrt())
}

/// Z0 = sqrt(n) X-bar / sigma, for known population sd.
pub fn z_statistic(x: &Sample, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput(format!("sigma must be > 0, got {sigma}")));
    }
    let (mean, _) = mean_and_s2(x.values());
    Ok((x.len() as f64).sqrt() * mean / sigma)
}

/// T_c = sqrt(n) (X-bar + c n^{-1/2}) / S = T0 + c/S.
pub fn shifted_t_statistic(x: &Sample, c: f64) -> Result<f64> {
    if !(c >= 0.0) {
        return Err(Error::InvalidInput(format!("shift c must be >= 0, got {c}")));
    }
    let (mean, s2) = mean_and_s2(x.values());
    if s2 <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    let s = s2.sqrt();
    Ok((x.len() as f64).sqrt() * mean / s + c / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn summary_symmetric_two_point() {
        let m = summarize(&sample(&[1.0, -1.0, 1.0, -1.0]));
        assert_eq!(m.mean, 0.0);
        assert_eq!(m.s2, 1.0);
        assert_eq!(m.gamma3_hat, Some(0.0));
    }

    #[test]
    fn summary_hand_case() {
        let m = summarize(&sample(&[0.0, 1.0, 2.0]));
        assert!((m.mean - 1.0).abs() < 1e-15);
        assert!((m.s2 - 2.0 / 3.0).abs() < 1e-15);
        assert!(m.gamma3_hat.unwrap().abs() < 1e-15);
    }

    #[test]
    fn summary_degenerate() {
        let m = summarize(&sample(&[2.0, 2.0, 2.0]));
        assert_eq!(m.mean, 2.0);
        assert_eq!(m.s2, 0.0);
        assert!(m.gamma3_hat.is_none());
        assert!(m.gamma4_hat.is_none());
    }

    #[test]
    fn t_statistic_cases() {
        assert_eq!(t_statistic(&sample(&[1.0, -1.0, 1.0, -1.0])).unwrap(), 0.0);
        let t = t_statistic(&sample(&[0.0, 1.0, 2.0])).unwrap();
        assert!((t - 2.121320343559643).abs() < 1e-12);
        assert!(matches!(
            t_statistic(&sample(&[3.0, 3.0])),
            Err(Error::DegenerateSample)
        ));
    }

    #[test]
    fn t_statistic_scale_invariant() {
        let x = sample(&[0.0, 1.0, 2.0]);
        let y = sample(&[0.0, 5.0, 10.0]);
        assert!((t_statistic(&x).unwrap() - t_statistic(&y).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn z_statistic_cases() {
        assert_eq!(z_statistic(&sample(&[1.0, -1.0]), 1.0).unwrap(), 0.0);
        let z = z_statistic(&sample(&[0.0, 1.0, 2.0]), 1.0).unwrap();
        assert!((z - 3.0f64.sqrt()).abs() < 1e-12);
        let z2 = z_statistic(&sample(&[0.0, 1.0, 2.0]), 2.0).unwrap();
        assert!((z2 - z / 2.0).abs() < 1e-12);
        assert!(z_statistic(&sample(&[0.0, 1.0]), 0.0).is_err());
    }

    #[test]
    fn shifted_t_cases() {
        let x = sample(&[0.0, 1.0, 2.0]);
        let t0 = t_statistic(&x).unwrap();
        assert_eq!(shifted_t_statistic(&x, 0.0).unwrap(), t0);
        // sqrt(9/2) + sqrt(3/2)
        let t1 = shifted_t_statistic(&x, 1.0).unwrap();
        assert!((t1 - 3.3460652149512314).abs() < 1e-12, "got {t1}");
    }

    proptest! {
        #[test]
        fn sign_equivariance(v in proptest::collection::vec(-50.0f64..50.0, 3..40)) {
            let x = sample(&v);
            let neg = sample(&v.iter().map(|a| -a).collect::<Vec<_>>());
            if let (Ok(t), Ok(tn)) = (t_statistic(&x), t_statistic(&neg)) {
                prop_assert!((t + tn).abs() < 1e-9 * (1.0 + t.abs()));
            }
        }

        #[test]
        fn scale_invariance(
            v in proptest::collection::vec(-50.0f64..50.0, 3..40),
            a in 0.001f64..1000.0,
        ) {
            let x = sample(&v);
            let scaled = sample(&v.iter().map(|e| a * e).collect::<Vec<_>>());
            if let (Ok(t), Ok(ts)) = (t_statistic(&x), t_statistic(&scaled)) {
                prop_assert!((t - ts).abs() < 1e-7 * (1.0 + t.abs()));
            }
        }

        #[test]
        fn gamma3_affine_invariance(
            v in proptest::collection::vec(-50.0f64..50.0, 3..40),
            a in 0.01f64..100.0,
            b in -100.0f64..100.0,
        ) {
            let x = sample(&v);
            let mapped = sample(&v.iter().map(|e| a * e + b).collect::<Vec<_>>());
            let (mx, my) = (summarize(&x), summarize(&mapped));
            if let (Some(g), Some(gm)) = (mx.gamma3_hat, my.gamma3_hat) {
                prop_assert!((g - gm).abs() < 1e-6 * (1.0 + g.abs()));
            }
        }

        #[test]
        fn shift_identity(
            v in proptest::collection::vec(-50.0f64..50.0, 3..40),
            c in 0.0f64..10.0,
        ) {
            let x = sample(&v);
            if let (Ok(t0), Ok(tc)) = (t_statistic(&x), shifted_t_statistic(&x, c)) {
                let s = (summarize(&x).s2).sqrt();
                prop_assert!((tc - t0 - c / s).abs() < 1e-9 * (1.0 + tc.abs()));
            }
        }
    }
}
