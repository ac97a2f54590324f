//! Empirical-cdf helpers: evaluation, quantiles and Kolmogorov-Smirnov
//! distances used by the simulation comparisons.

/// Fraction of `sorted` that is <= x. `sorted` must be ascending.
pub fn ecdf_at(sorted: &[f64], x: f64) -> f64 {
    let k = sorted.partition_point(|&v| v <= x);
    k as f64 / sorted.len() as f64
}

/// Empirical upper quantile: smallest value with at most a fraction `alpha`
/// of the sample strictly above it.
pub fn empirical_upper_quantile(sorted: &[f64], alpha: f64) -> f64 {
    let n = sorted.len();
    let m = ((1.0 - alpha) * n as f64).ceil() as usize;
    sorted[m.clamp(1, n) - 1]
}

/// Two-sample KS statistic; sorts both inputs in place.
pub fn ks_statistic_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ecdf_basics() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ecdf_at(&v, 0.5), 0.0);
        assert_eq!(ecdf_at(&v, 2.0), 0.5);
        assert_eq!(ecdf_at(&v, 9.0), 1.0);
    }

    #[test]
    fn ks_identical_samples_is_zero() {
        let mut a = vec![3.0, 1.0, 2.0];
        let mut b = vec![1.0, 2.0, 3.0];
        assert_eq!(ks_statistic_two_sample(&mut a, &mut b), 0.0);
    }

    #[test]
    fn ks_disjoint_samples_is_one() {
        let mut a = vec![0.0, 1.0];
        let mut b = vec![5.0, 6.0];
        assert_eq!(ks_statistic_two_sample(&mut a, &mut b), 1.0);
    }

    #[test]
    fn ks_hand_case() {
        // F_a jumps at 1,2; F_b at 2,3: max gap 0.5 just below 2.
        let mut a = vec![1.0, 2.0];
        let mut b = vec![2.0, 3.0];
        assert_eq!(ks_statistic_two_sample(&mut a, &mut b), 0.5);
    }
}
