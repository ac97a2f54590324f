use thiserror::Error;

/// Errors shared across the library.
#[derive(Error, Debug)]
pub enum Error {
    /// A sample (or resample) has zero empirical variance, so Studentised
    /// statistics are undefined for it.
    #[error("degenerate sample: empirical variance is zero")]
    DegenerateSample,

    /// Too few effective bootstrap resamples to resolve the requested
    /// tail quantile.
    #[error("insufficient resamples: have {have}, need at least {need} for alpha={alpha}")]
    InsufficientResamples { have: usize, need: usize, alpha: f64 },

    /// An alpha grid with no admissible grid points.
    #[error("empty alpha grid: floor(alpha0*p)={top} < i_min={i_min}")]
    EmptyGrid { top: usize, i_min: usize },

    /// A distribution whose requested moment diverges.
    #[error("infinite moment: {0}")]
    InfiniteMoment(String),

    /// A (beta, r, theta) point on or below the detection boundary.
    #[error("not detectable: r={r} <= rho_theta(beta)={rho}")]
    NotDetectable { r: f64, rho: f64 },

    /// An oracle quantile table that does not cover the requested grid.
    #[error("missing quantile: {0}")]
    MissingQuantile(String),

    /// Invalid configuration or argument values.
    #[error("config error: {0}")]
    Config(String),

    /// Numeric argument outside the documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
