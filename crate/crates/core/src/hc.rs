//! Higher-criticism statistics over the alpha grid {i/p}: the bootstrap
//! variant (per-feature bootstrap-t quantiles), the normal variant (z_alpha
//! thresholds) and the oracle variant (known-law quantile tables).

use crate::bootstrap::{min_resamples, quantile_rank};
use crate::dist::FeatureMatrix;
use crate::error::{Error, Result};
use crate::normal::std_normal_quantile;
use crate::prng::StreamKey;
use crate::stats::{mean_and_s2, Sample};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// The grid alpha_i = i/p for i_min <= i <= floor(alpha0 p).
#[derive(Clone, Debug)]
pub struct AlphaGrid {
    p: usize,
    alpha0: f64,
    i_min: usize,
    i_max: usize,
}

/// The default tail window alpha0 = n p^{-1} log p: wide enough to catch
/// sparse signals, narrow enough to stay in the upper tail.
pub fn default_alpha0(n: usize, p: usize) -> f64 {
    (n as f64 / p as f64 * (p as f64).ln()).min(0.999)
}

pub fn alpha_grid(p: usize, alpha0: f64, i_min: usize) -> Result<AlphaGrid> {
    if p == 0 || i_min == 0 {
        return Err(Error::Config("alpha grid needs p >= 1 and i_min >= 1".into()));
    }
    if !(alpha0 > 0.0 && alpha0 < 1.0) {
        return Err(Error::Config(format!("alpha0 must lie in (0,1), got {alpha0}")));
    }
    let mut i_max = (alpha0 * p as f64).floor() as usize;
    while i_max >= 1 && i_max as f64 / p as f64 > alpha0 {
        i_max -= 1;
    }
    if i_max < i_min {
        return Err(Error::EmptyGrid { top: i_max, i_min });
    }
    Ok(AlphaGrid { p, alpha0, i_min, i_max })
}

impl AlphaGrid {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn i_min(&self) -> usize {
        self.i_min
    }

    pub fn len(&self) -> usize {
        self.i_max - self.i_min + 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alpha_at(&self, idx: usize) -> f64 {
        debug_assert!(idx < self.len());
        (self.i_min + idx) as f64 / self.p as f64
    }

    pub fn alphas(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.alpha_at(i)).collect()
    }

    pub fn min_alpha(&self) -> f64 {
        self.alpha_at(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HcVariant {
    Bootstrap,
    Normal,
    Oracle,
}

/// The maximized statistic, its argmax alpha and the whole standardized
/// trajectory over the grid.
#[derive(Clone, Debug)]
pub struct HcResult {
    pub value: f64,
    pub argmax_alpha: f64,
    pub trajectory: Vec<f64>,
    pub variant: HcVariant,
}

/// Standardize per-alpha exceedance counts and take the grid maximum
/// (first index wins ties).
fn hc_from_counts(counts: &[usize], grid: &AlphaGrid, variant: HcVariant) -> HcResult {
    let p = grid.p() as f64;
    let mut trajectory = Vec::with_capacity(counts.len());
    let mut best = f64::NEG_INFINITY;
    let mut best_alpha = grid.alpha_at(0);
    for (i, &count) in counts.iter().enumerate() {
        let alpha = grid.alpha_at(i);
        let v = (count as f64 - p * alpha) / (p * alpha * (1.0 - alpha)).sqrt();
        if v > best {
            best = v;
            best_alpha = alpha;
        }
        trajectory.push(v);
    }
    HcResult { value: best, argmax_alpha: best_alpha, trajectory, variant }
}

/// Evaluate the statistic from a p x |grid| exceedance indicator matrix.
pub fn hc_from_indicators(
    exceed: &[Vec<bool>],
    grid: &AlphaGrid,
    variant: HcVariant,
) -> Result<HcResult> {
    if exceed.len() != grid.p() {
        return Err(Error::Config(format!(
            "indicator matrix has {} rows, expected p = {}",
            exceed.len(),
            grid.p()
        )));
    }
    let mut counts = vec![0usize; grid.len()];
    for row in exceed {
        if row.len() != grid.len() {
            return Err(Error::Config(format!(
                "indicator row has {} entries, expected {}",
                row.len(),
                grid.len()
            )));
        }
        for (i, &hit) in row.iter().enumerate() {
            counts[i] += hit as usize;
        }
    }
    Ok(hc_from_counts(&counts, grid, variant))
}

/// Turn per-column "first exceeded grid index" values into per-alpha counts.
/// Indicator rows are monotone (once a column exceeds at some alpha it
/// exceeds at all larger alphas), so a suffix accumulation suffices.
fn counts_from_first_exceed(first_exceed: &[Option<usize>], grid_len: usize) -> Vec<usize> {
    let mut starts = vec![0usize; grid_len + 1];
    for fe in first_exceed.iter().flatten() {
        starts[*fe] += 1;
    }
    let mut counts = vec![0usize; grid_len];
    let mut acc = 0usize;
    for i in 0..grid_len {
        acc += starts[i];
        counts[i] = acc;
    }
    counts
}

/// Bootstrap-t higher criticism. Per feature j: T^(j) from the column, B
/// resamples from the stream keyed child(j), and the indicator at alpha_i is
/// T^(j) > t-hat_alpha_i. All grid quantiles come from the same draws, via
/// the rank identity T > sorted[m-1]  <=>  #\{draws < T\} >= m.
pub fn hc_bootstrap(
    m: &FeatureMatrix,
    grid: &AlphaGrid,
    b: usize,
    key: &StreamKey,
) -> Result<HcResult> {
    let need = min_resamples(grid.min_alpha())?;
    if b < need {
        return Err(Error::InsufficientResamples { have: b, need, alpha: grid.min_alpha() });
    }
    let grid_len = grid.len();
    let first_exceed: Vec<Option<usize>> = (0..m.p())
        .into_par_iter()
        .map(|j| -> Result<Option<usize>> {
            let col = m.column(j);
            let (mean, s2) = mean_and_s2(col);
            if s2 <= 0.0 {
                return Err(Error::DegenerateSample);
            }
            let t = (col.len() as f64).sqrt() * mean / s2.sqrt();

            let mut g = key.child(j as u64).generator();
            let mut buf = vec![0.0; col.len()];
            let mut below = 0usize; // draws strictly below T^(j)
            let mut b_eff = 0usize;
            for _ in 0..b {
                if let Some(ts) = crate::bootstrap::resample_statistic(col, mean, &mut buf, &mut g)
                {
                    b_eff += 1;
                    if ts < t {
                        below += 1;
                    }
                }
            }
            let hard_need = (1.0 / grid.min_alpha()).ceil() as usize;
            if b_eff < hard_need {
                return Err(Error::InsufficientResamples {
                    have: b_eff,
                    need: hard_need,
                    alpha: grid.min_alpha(),
                });
            }
            // quantile_rank is nonincreasing in alpha, so the indicator
            // rank <= below is monotone over the grid: binary search.
            let (mut lo, mut hi) = (0usize, grid_len);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if quantile_rank(b_eff, grid.alpha_at(mid)) > below {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            Ok((lo < grid_len).then_some(lo))
        })
        .collect::<Result<Vec<_>>>()?;
    let counts = counts_from_first_exceed(&first_exceed, grid_len);
    Ok(hc_from_counts(&counts, grid, HcVariant::Bootstrap))
}

/// Normal-quantile higher criticism: indicator at alpha is T^(j) > z_alpha.
pub fn hc_normal(m: &FeatureMatrix, grid: &AlphaGrid) -> Result<HcResult> {
    let z: Vec<f64> =
        (0..grid.len()).map(|i| std_normal_quantile(grid.alpha_at(i))).collect::<Result<_>>()?;
    let mut first_exceed = Vec::with_capacity(m.p());
    for j in 0..m.p() {
        let col = m.column(j);
        let (mean, s2) = mean_and_s2(col);
        if s2 <= 0.0 {
            return Err(Error::DegenerateSample);
        }
        let t = (col.len() as f64).sqrt() * mean / s2.sqrt();
        // z is decreasing in alpha, so exceedance is monotone over the grid.
        let first = z.partition_point(|&zi| t <= zi);
        first_exceed.push((first < grid.len()).then_some(first));
    }
    let counts = counts_from_first_exceed(&first_exceed, grid.len());
    Ok(hc_from_counts(&counts, grid, HcVariant::Normal))
}

/// Oracle quantiles per (column, alpha); one shared row suffices when all
/// columns are identically distributed.
#[derive(Clone, Debug)]
pub enum QuantileTable {
    Shared(Vec<f64>),
    PerColumn(Vec<Vec<f64>>),
}

impl QuantileTable {
    fn row(&self, j: usize, p: usize, grid_len: usize) -> Result<&[f64]> {
        let row = match self {
            QuantileTable::Shared(r) => r.as_slice(),
            QuantileTable::PerColumn(rows) => {
                if rows.len() != p {
                    return Err(Error::MissingQuantile(format!(
                        "table has {} rows, expected {p}",
                        rows.len()
                    )));
                }
                rows[j].as_slice()
            }
        };
        if row.len() != grid_len {
            return Err(Error::MissingQuantile(format!(
                "quantile row has {} entries, expected {grid_len}",
                row.len()
            )));
        }
        Ok(row)
    }
}

/// Known-law higher criticism: indicator at alpha is T^(j) > t_alpha^(j)
/// taken from the table.
pub fn hc_oracle(m: &FeatureMatrix, grid: &AlphaGrid, table: &QuantileTable) -> Result<HcResult> {
    let grid_len = grid.len();
    let mut counts = vec![0usize; grid_len];
    for j in 0..m.p() {
        let q = table.row(j, m.p(), grid_len)?;
        let col = m.column(j);
        let (mean, s2) = mean_and_s2(col);
        if s2 <= 0.0 {
            return Err(Error::DegenerateSample);
        }
        let t = (col.len() as f64).sqrt() * mean / s2.sqrt();
        for (i, &qi) in q.iter().enumerate() {
            counts[i] += (t > qi) as usize;
        }
    }
    Ok(hc_from_counts(&counts, grid, HcVariant::Oracle))
}

/// Direct t-statistics of every column; shared by the harness runners.
pub fn column_t_statistics(m: &FeatureMatrix) -> Result<Vec<f64>> {
    (0..m.p())
        .map(|j| {
            let col = Sample::new(m.column(j).to_vec())?;
            crate::stats::t_statistic(&col)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::{bootstrap_quantile, bootstrap_t_draws};
    use crate::dist::{sample_signal_matrix, DistKind, DistSpec, Hypothesis};
    use crate::phase::make_signal_config_with_p;
    use crate::prng::StreamKey;
    use proptest::prelude::*;

    #[test]
    fn grid_examples() {
        let a0 = default_alpha0(100, 10_000);
        assert!((a0 - 0.0921034).abs() < 1e-6);
        let g = alpha_grid(10_000, a0, 1).unwrap();
        assert_eq!(g.len(), 921);

        let g = alpha_grid(4, 0.5, 1).unwrap();
        assert_eq!(g.alphas(), vec![0.25, 0.5]);

        assert!(matches!(
            alpha_grid(10, 0.5, 10),
            Err(Error::EmptyGrid { top: 5, i_min: 10 })
        ));
    }

    #[test]
    fn hc_from_indicators_hand_cases() {
        let grid = alpha_grid(4, 0.5, 1).unwrap();
        // counts {4, 4} at alphas {1/4, 1/2}
        let rows = vec![vec![true, true]; 4];
        let r = hc_from_indicators(&rows, &grid, HcVariant::Oracle).unwrap();
        assert!((r.value - 3.4641016151377544).abs() < 1e-12);
        assert_eq!(r.argmax_alpha, 0.25);
        assert!((r.trajectory[1] - 2.0).abs() < 1e-12);

        // exactly one exceedance at alpha = 1/4: term 0
        let mut rows = vec![vec![false, false]; 4];
        rows[0] = vec![true, true];
        let r = hc_from_indicators(&rows, &grid, HcVariant::Oracle).unwrap();
        assert_eq!(r.trajectory[0], 0.0);

        // all-zero counts on grid {1/4}
        let grid1 = alpha_grid(4, 0.26, 1).unwrap();
        let rows = vec![vec![false]; 4];
        let r = hc_from_indicators(&rows, &grid1, HcVariant::Oracle).unwrap();
        assert!((r.value - -1.1547005383792517).abs() < 1e-12);
    }

    proptest! {
        /// Brute-force check of the standardized-count formula on random
        /// monotone indicator patterns.
        #[test]
        fn matches_direct_formula(
            p in 2usize..8,
            firsts in proptest::collection::vec(0usize..5, 8),
        ) {
            let grid = alpha_grid(p, 0.99, 1).unwrap();
            let glen = grid.len();
            let rows: Vec<Vec<bool>> = (0..p)
                .map(|j| (0..glen).map(|i| i >= firsts[j].min(glen)).collect())
                .collect();
            let r = hc_from_indicators(&rows, &grid, HcVariant::Oracle).unwrap();
            // direct evaluation of the definition
            let mut best = f64::NEG_INFINITY;
            for i in 0..glen {
                let alpha = grid.alpha_at(i);
                let count = rows.iter().filter(|row| row[i]).count() as f64;
                let term = (count - p as f64 * alpha)
                    / (p as f64 * alpha * (1.0 - alpha)).sqrt();
                if term > best { best = term; }
                prop_assert!((term - r.trajectory[i]).abs() < 1e-12);
            }
            prop_assert!((best - r.value).abs() < 1e-12);
        }
    }

    fn toy_matrix(shift_first: bool) -> (crate::dist::FeatureMatrix, AlphaGrid) {
        let cfg = make_signal_config_with_p(20, 8, 0.5, 0.75, 0.8).unwrap();
        let mut g = StreamKey::from_labels(11, &[7]).generator();
        let m = sample_signal_matrix(
            &cfg,
            &DistSpec::standardized(DistKind::StdNormal),
            if shift_first { Hypothesis::H1 } else { Hypothesis::H0 },
            &mut g,
        )
        .unwrap();
        let grid = alpha_grid(8, 0.6, 1).unwrap();
        (m, grid)
    }

    #[test]
    fn bootstrap_counting_path_matches_naive_pipeline() {
        let (m, grid) = toy_matrix(false);
        let key = StreamKey::from_labels(3, &[1, 2]);
        let b = min_resamples(grid.min_alpha()).unwrap();
        let fast = hc_bootstrap(&m, &grid, b, &key).unwrap();

        let mut rows = Vec::new();
        for j in 0..m.p() {
            let col = Sample::new(m.column(j).to_vec()).unwrap();
            let t = crate::stats::t_statistic(&col).unwrap();
            let mut g = key.child(j as u64).generator();
            let draws = bootstrap_t_draws(&col, b, &mut g).unwrap();
            let row: Vec<bool> = (0..grid.len())
                .map(|i| t > bootstrap_quantile(&draws, grid.alpha_at(i)).unwrap())
                .collect();
            rows.push(row);
        }
        let naive = hc_from_indicators(&rows, &grid, HcVariant::Bootstrap).unwrap();
        assert_eq!(fast.value, naive.value);
        assert_eq!(fast.argmax_alpha, naive.argmax_alpha);
        assert_eq!(fast.trajectory, naive.trajectory);
    }

    #[test]
    fn bootstrap_requires_enough_resamples() {
        let (m, grid) = toy_matrix(false);
        let key = StreamKey::new(1);
        assert!(matches!(
            hc_bootstrap(&m, &grid, 10, &key),
            Err(Error::InsufficientResamples { .. })
        ));
    }

    #[test]
    fn huge_shift_exceeds_everywhere() {
        let (m, grid) = toy_matrix(false);
        // Rebuild with one column pushed far out.
        let mut data: Vec<Vec<f64>> = (0..m.p()).map(|j| m.column(j).to_vec()).collect();
        for v in data[3].iter_mut() {
            *v += 10.0;
        }
        let rows: Vec<Vec<f64>> = data;
        let key = StreamKey::new(5);
        let b = min_resamples(grid.min_alpha()).unwrap();
        // Build matrices through the signal sampler is clumsy here; exercise
        // the naive indicator pipeline instead.
        let mut indicator_rows = Vec::new();
        for col_vals in &rows {
            let col = Sample::new(col_vals.clone()).unwrap();
            let t = crate::stats::t_statistic(&col).unwrap();
            let mut g = key.generator();
            let draws = bootstrap_t_draws(&col, b, &mut g).unwrap();
            let row: Vec<bool> = (0..grid.len())
                .map(|i| t > bootstrap_quantile(&draws, grid.alpha_at(i)).unwrap())
                .collect();
            indicator_rows.push(row);
        }
        assert!(indicator_rows[3].iter().all(|&x| x));
    }

    #[test]
    fn normal_variant_and_oracle_with_normal_table_agree() {
        let (m, grid) = toy_matrix(true);
        let normal = hc_normal(&m, &grid).unwrap();
        let table = QuantileTable::Shared(
            (0..grid.len()).map(|i| std_normal_quantile(grid.alpha_at(i)).unwrap()).collect(),
        );
        let oracle = hc_oracle(&m, &grid, &table).unwrap();
        assert_eq!(normal.value, oracle.value);
        assert_eq!(normal.trajectory, oracle.trajectory);
        assert_eq!(normal.variant, HcVariant::Normal);
        assert_eq!(oracle.variant, HcVariant::Oracle);
    }

    #[test]
    fn oracle_infinite_quantiles_never_exceed() {
        let (m, grid) = toy_matrix(true);
        let table = QuantileTable::Shared(vec![f64::INFINITY; grid.len()]);
        let r = hc_oracle(&m, &grid, &table).unwrap();
        let p = grid.p() as f64;
        for (i, v) in r.trajectory.iter().enumerate() {
            let alpha = grid.alpha_at(i);
            let want = (0.0 - p * alpha) / (p * alpha * (1.0 - alpha)).sqrt();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_quantiles_rejected() {
        let (m, grid) = toy_matrix(true);
        let table = QuantileTable::Shared(vec![0.0; grid.len() - 1]);
        assert!(matches!(
            hc_oracle(&m, &grid, &table),
            Err(Error::MissingQuantile(_))
        ));
        let table = QuantileTable::PerColumn(vec![vec![0.0; grid.len()]; m.p() - 1]);
        assert!(matches!(
            hc_oracle(&m, &grid, &table),
            Err(Error::MissingQuantile(_))
        ));
    }

    #[test]
    fn column_permutation_invariance() {
        let (m, grid) = toy_matrix(true);
        let normal = hc_normal(&m, &grid).unwrap();
        // Permute columns by rebuilding indicator rows in reverse order.
        let z: Vec<f64> = (0..grid.len())
            .map(|i| std_normal_quantile(grid.alpha_at(i)).unwrap())
            .collect();
        let mut rows = Vec::new();
        for j in (0..m.p()).rev() {
            let col = Sample::new(m.column(j).to_vec()).unwrap();
            let t = crate::stats::t_statistic(&col).unwrap();
            rows.push(z.iter().map(|&zi| t > zi).collect::<Vec<bool>>());
        }
        let permuted = hc_from_indicators(&rows, &grid, HcVariant::Normal).unwrap();
        assert_eq!(normal.value, permuted.value);
        assert_eq!(normal.trajectory, permuted.trajectory);
    }
}
