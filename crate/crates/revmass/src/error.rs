//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by profile construction, metric validation, quadrature,
/// embedding and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown builtin profile `{0}`")]
    UnknownProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("profile is not convex: {0}")]
    NotConvex(String),

    #[error("degenerate tangent: w'^2+h'^2 = {speed_sq:.3e} below tol^2 at phi = {phi:.6}")]
    DegenerateTangent { phi: f64, speed_sq: f64 },

    #[error("pole closure violated: {0}")]
    PoleClosure(String),

    #[error("arclength inversion failed: {0}")]
    InversionFailed(String),

    #[error("pole limit undefined: |h''| = {hpp:.3e} below threshold at {which} pole")]
    PoleLimitUndefined { which: &'static str, hpp: f64 },

    #[error("quadrature did not converge: estimate {estimate:.3e} > tol {tol:.3e} after {doublings} panel doublings")]
    QuadratureNonConvergence {
        estimate: f64,
        tol: f64,
        doublings: u32,
    },

    #[error("non-finite integrand value at phi = {0:.6}")]
    NonFiniteIntegrand(f64),

    #[error("metric error: {0}")]
    Metric(String),

    #[error("perturbation decay violated: {0}")]
    DecayViolation(String),

    #[error("embedding failed at phi = {phi:.6}: {reason}")]
    EmbeddingFailed { phi: f64, reason: String },

    #[error("induced metric degenerate at phi = {0:.6}")]
    DegenerateInducedMetric(f64),

    #[error("experiment failed at a = {a}, stage `{stage}`: {source}")]
    Experiment {
        a: f64,
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an error with the (scale, pipeline stage) it occurred at.
    pub fn at_stage(self, a: f64, stage: &'static str) -> Error {
        Error::Experiment {
            a,
            stage,
            source: Box::new(self),
        }
    }
}
