//! Sampling distributions for the simulation studies: standardized
//! heavy-tailed/skewed laws and the lag-10 moving-average stream model.
//!
//! All samplers are built from the inverse normal transform (or inverse cdf
//! for Pareto) so that each draw consumes a fixed number of uniforms from
//! its stream, keeping runs reproducible under any scheduling.

use crate::error::{Error, Result};
use crate::phase::SignalConfig;
use crate::prng::Generator;
use serde::{Deserialize, Serialize};

/// The raw laws used in the experiments. `NormalAbsPow(m)` is U = N^m |N|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistKind {
    ParetoShapeScale { shape: f64, scale: f64 },
    FisherF { d1: u32, d2: u32 },
    ChiSquared { k: u32 },
    NormalAbsPow { m: u32 },
    StdNormal,
}

/// A sampling law plus whether draws are recentred/rescaled to mean 0,
/// variance 1 using the closed-form moments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistSpec {
    pub kind: DistKind,
    pub standardized: bool,
}

impl DistSpec {
    pub fn standardized(kind: DistKind) -> Self {
        DistSpec { kind, standardized: true }
    }

    /// Short comma-free label for CSV columns and file headers.
    pub fn label(&self) -> String {
        let base = match self.kind {
            DistKind::ParetoShapeScale { shape, scale } => format!("pareto-{shape}-{scale}"),
            DistKind::FisherF { d1, d2 } => format!("f-{d1}-{d2}"),
            DistKind::ChiSquared { k } => format!("chi2-{k}"),
            DistKind::NormalAbsPow { m } => format!("n{m}absn"),
            DistKind::StdNormal => "stdnormal".to_string(),
        };
        if self.standardized { format!("std-{base}") } else { base }
    }
}

// Wire format: {"kind": "...", "params": [...], "standardized": bool}.
#[derive(Serialize, Deserialize)]
struct DistSpecRepr {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
    #[serde(default = "default_true")]
    standardized: bool,
}

fn default_true() -> bool {
    true
}

impl Serialize for DistSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, params) = match self.kind {
            DistKind::ParetoShapeScale { shape, scale } => ("pareto", vec![shape, scale]),
            DistKind::FisherF { d1, d2 } => ("fisher_f", vec![d1 as f64, d2 as f64]),
            DistKind::ChiSquared { k } => ("chi_squared", vec![k as f64]),
            DistKind::NormalAbsPow { m } => ("normal_abs_pow", vec![m as f64]),
            DistKind::StdNormal => ("std_normal", vec![]),
        };
        DistSpecRepr { kind: kind.to_string(), params, standardized: self.standardized }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = DistSpecRepr::deserialize(d)?;
        let need = |n: usize| -> std::result::Result<(), D::Error> {
            if repr.params.len() == n {
                Ok(())
            } else {
                Err(DeError::custom(format!(
                    "distribution '{}' expects {} params, got {}",
                    repr.kind,
                    n,
                    repr.params.len()
                )))
            }
        };
        let kind = match repr.kind.as_str() {
            "pareto" => {
                need(2)?;
                DistKind::ParetoShapeScale { shape: repr.params[0], scale: repr.params[1] }
            }
            "fisher_f" => {
                need(2)?;
                DistKind::FisherF { d1: repr.params[0] as u32, d2: repr.params[1] as u32 }
            }
            "chi_squared" => {
                need(1)?;
                DistKind::ChiSquared { k: repr.params[0] as u32 }
            }
            "normal_abs_pow" => {
                need(1)?;
                DistKind::NormalAbsPow { m: repr.params[0] as u32 }
            }
            "std_normal" => {
                need(0)?;
                DistKind::StdNormal
            }
            other => return Err(DeError::custom(format!("unknown distribution kind '{other}'"))),
        };
        Ok(DistSpec { kind, standardized: repr.standardized })
    }
}

fn double_factorial_odd(upper: u32) -> f64 {
    // upper must be odd: 1*3*5*...*upper
    let mut acc = 1.0;
    let mut k = 1;
    while k <= upper {
        acc *= k as f64;
        k += 2;
    }
    acc
}

/// E |N|^q for odd q = 2j+1: 2^j j! sqrt(2/pi).
fn abs_normal_moment_odd(q: u32) -> f64 {
    let j = (q - 1) / 2;
    let mut acc = (2.0 / std::f64::consts::PI).sqrt();
    for i in 1..=j {
        acc *= 2.0 * i as f64;
    }
    acc
}

/// Raw k-th moment of F(d1, d2); exists for d2 > 2k.
fn fisher_f_raw_moment(d1: u32, d2: u32, k: u32) -> Result<f64> {
    if d2 <= 2 * k {
        return Err(Error::InfiniteMoment(format!(
            "F({d1},{d2}) has no finite moment of order {k} (requires d2 > {})",
            2 * k
        )));
    }
    let (d1f, d2f) = (d1 as f64, d2 as f64);
    let mut m = (d2f / d1f).powi(k as i32);
    for i in 0..k {
        m *= d1f / 2.0 + i as f64;
    }
    for i in 1..=k {
        m /= d2f / 2.0 - i as f64;
    }
    Ok(m)
}

fn pareto_raw_moment(shape: f64, scale: f64, k: u32) -> Result<f64> {
    if shape <= k as f64 {
        return Err(Error::InfiniteMoment(format!(
            "Pareto(shape={shape}) has no finite moment of order {k}"
        )));
    }
    Ok(shape * scale.powi(k as i32) / (shape - k as f64))
}

fn raw_moment(kind: DistKind, k: u32) -> Result<f64> {
    match kind {
        DistKind::ParetoShapeScale { shape, scale } => pareto_raw_moment(shape, scale, k),
        DistKind::FisherF { d1, d2 } => fisher_f_raw_moment(d1, d2, k),
        DistKind::ChiSquared { k: dof } => {
            // E U^k = dof (dof+2) ... (dof + 2(k-1))
            let mut m = 1.0;
            for i in 0..k {
                m *= dof as f64 + 2.0 * i as f64;
            }
            Ok(m)
        }
        DistKind::NormalAbsPow { m } => {
            // U^k = N^{mk} |N|^k: odd in N when mk + k is odd by sign carry.
            let q = m * k + k;
            let signed = m % 2 == 1 && k % 2 == 1;
            if signed {
                Ok(0.0)
            } else if q.is_multiple_of(2) {
                Ok(double_factorial_odd(q - 1))
            } else {
                Ok(abs_normal_moment_odd(q))
            }
        }
        DistKind::StdNormal => Ok(match k {
            0 => 1.0,
            _ if k % 2 == 1 => 0.0,
            _ => double_factorial_odd(k - 1),
        }),
    }
}

/// Closed-form mean and variance of the raw law U.
pub fn standardizing_moments(spec: &DistSpec) -> Result<(f64, f64)> {
    let m1 = raw_moment(spec.kind, 1)?;
    let m2 = raw_moment(spec.kind, 2)?;
    let var = m2 - m1 * m1;
    if !(var > 0.0) {
        return Err(Error::InfiniteMoment(format!(
            "law {} has nonpositive variance {var}",
            spec.label()
        )));
    }
    Ok((m1, var))
}

/// Skewness E X^3 of the standardized variable X = (U - EU)/sd(U).
pub fn standardized_skewness(spec: &DistSpec) -> Result<f64> {
    let (mu, var) = standardizing_moments(spec)?;
    let m3 = raw_moment(spec.kind, 3)?;
    let central3 = m3 - 3.0 * mu * (var + mu * mu) + 2.0 * mu * mu * mu;
    Ok(central3 / var.powf(1.5))
}

fn draw_raw(kind: DistKind, g: &mut Generator) -> f64 {
    match kind {
        DistKind::ParetoShapeScale { shape, scale } => {
            scale * (1.0 - g.uniform01()).powf(-1.0 / shape)
        }
        DistKind::FisherF { d1, d2 } => {
            let c1 = draw_chi2(d1, g);
            let c2 = draw_chi2(d2, g);
            (c1 / d1 as f64) / (c2 / d2 as f64)
        }
        DistKind::ChiSquared { k } => draw_chi2(k, g),
        DistKind::NormalAbsPow { m } => {
            let z = g.std_normal();
            z.powi(m as i32) * z.abs()
        }
        DistKind::StdNormal => g.std_normal(),
    }
}

fn draw_chi2(dof: u32, g: &mut Generator) -> f64 {
    let mut acc = 0.0;
    for _ in 0..dof {
        let z = g.std_normal();
        acc += z * z;
    }
    acc
}

/// A per-draw sampler with the standardization constants resolved once.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    kind: DistKind,
    offset: f64,
    inv_sd: f64,
}

impl Sampler {
    pub fn new(spec: &DistSpec) -> Result<Self> {
        if spec.standardized {
            let (mu, var) = standardizing_moments(spec)?;
            Ok(Sampler { kind: spec.kind, offset: mu, inv_sd: 1.0 / var.sqrt() })
        } else {
            Ok(Sampler { kind: spec.kind, offset: 0.0, inv_sd: 1.0 })
        }
    }

    #[inline]
    pub fn draw(&self, g: &mut Generator) -> f64 {
        (draw_raw(self.kind, g) - self.offset) * self.inv_sd
    }
}

/// n i.i.d. draws (standardized when the spec says so).
pub fn sample_iid(spec: &DistSpec, n: usize, g: &mut Generator) -> Result<Vec<f64>> {
    let sampler = Sampler::new(spec)?;
    Ok((0..n).map(|_| sampler.draw(g)).collect())
}

/// The lag-`lag` moving-average stream model: feature k of one observation
/// row is built as sum_j theta^j eps_{j+k} over a shared innovation vector,
/// making adjacent columns (lag+1)-dependent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaStreamSpec {
    pub theta: f64,
    #[serde(default = "default_lag")]
    pub lag: usize,
    pub innovation: DistSpec,
}

fn default_lag() -> usize {
    10
}

impl MaStreamSpec {
    fn validate(&self) -> Result<()> {
        if !(self.theta >= 0.0 && self.theta < 1.0) {
            return Err(Error::Config(format!("ma theta must lie in [0,1), got {}", self.theta)));
        }
        Ok(())
    }
}

/// An n x p matrix of per-feature samples, stored column-major. Columns that
/// carry an injected mean shift are recorded.
#[derive(Clone, Debug)]
pub struct FeatureMatrix {
    n: usize,
    p: usize,
    data: Vec<f64>,
    shifted_columns: Vec<usize>,
}

impl FeatureMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn shifted_columns(&self) -> &[usize] {
        &self.shifted_columns
    }
}

/// Dependent-stream matrix: each row has its own innovation vector of length
/// p + lag; columns are standardized with the closed-form variance
/// sum_j theta^{2j}.
pub fn sample_ma_matrix(
    spec: &MaStreamSpec,
    n: usize,
    p: usize,
    g: &mut Generator,
) -> Result<FeatureMatrix> {
    spec.validate()?;
    if p == 0 {
        return Err(Error::Config("ma matrix needs p >= 1".into()));
    }
    // Innovations are always standardized first; the closed-form MA variance
    // then rescales each column.
    let sampler = Sampler::new(&DistSpec { kind: spec.innovation.kind, standardized: true })?;
    let lag = spec.lag;
    let mut weights = Vec::with_capacity(lag + 1);
    let mut w = 1.0;
    let mut var_u = 0.0;
    for _ in 0..=lag {
        weights.push(w);
        var_u += w * w;
        w *= spec.theta;
    }
    let inv_sd_u = 1.0 / var_u.sqrt();

    let mut data = vec![0.0; n * p];
    let mut eps = vec![0.0; p + lag];
    for i in 0..n {
        for e in eps.iter_mut() {
            *e = sampler.draw(g);
        }
        for k in 0..p {
            let mut u = 0.0;
            for (j, &wj) in weights.iter().enumerate() {
                u += wj * eps[k + j];
            }
            data[k * n + i] = u * inv_sd_u;
        }
    }
    Ok(FeatureMatrix { n, p, data, shifted_columns: Vec::new() })
}

/// Which hypothesis a signal matrix is drawn under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    H0,
    H1,
}

/// Sparse-mean scenario matrix: i.i.d. standardized columns; under H1 the
/// first k columns get the mean shift tau_n / sqrt(n) added to every entry.
pub fn sample_signal_matrix(
    cfg: &SignalConfig,
    spec: &DistSpec,
    hypothesis: Hypothesis,
    g: &mut Generator,
) -> Result<FeatureMatrix> {
    let sampler = Sampler::new(spec)?;
    let (n, p) = (cfg.n, cfg.p);
    let shift = cfg.tau_n / (n as f64).sqrt();
    let k = match hypothesis {
        Hypothesis::H0 => 0,
        Hypothesis::H1 => {
            if cfg.k == 0 {
                return Err(Error::Config(format!(
                    "signal scenario has k = 0 shifted columns (beta={}, p={}): undetectable",
                    cfg.beta, cfg.p
                )));
            }
            cfg.k
        }
    };
    let mut data = vec![0.0; n * p];
    for j in 0..p {
        let add = if j < k { shift } else { 0.0 };
        let col = &mut data[j * n..(j + 1) * n];
        for v in col.iter_mut() {
            *v = sampler.draw(g) + add;
        }
    }
    Ok(FeatureMatrix { n, p, data, shifted_columns: (0..k).collect() })
}
