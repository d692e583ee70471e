//! Crate-wide error type.

/// Errors surfaced by analytic evaluation, sampling and simulation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A series hit a pole of the parameter (e.g. `c` a non-positive integer
    /// in a hypergeometric denominator).
    #[error("pole in {op}: {msg}")]
    Pole { op: &'static str, msg: String },

    /// A series failed to reach the convergence target within the term cap.
    #[error("series for {op} did not converge after {terms} terms")]
    NonConvergence { op: &'static str, terms: usize },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure in {op}: estimated error {err:.3e} above tolerance")]
    QuadratureFailure { op: &'static str, err: f64 },

    /// A law failed its construction-time self check (normalisation or
    /// cross-route agreement).
    #[error("law construction failed for {law}: {msg}")]
    LawConstruction { law: &'static str, msg: String },

    /// A rejection sampler's running acceptance rate collapsed, which cannot
    /// happen for valid parameters and therefore signals a bug.
    #[error("rejection sampler stalled in {op}: acceptance {rate:.3e}")]
    RejectionStall { op: &'static str, rate: f64 },

    /// Inconsistent simulation or experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Not enough data points for an estimator.
    #[error("insufficient data for {op}: need {need}, got {got}")]
    InsufficientData { op: &'static str, need: usize, got: usize },
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
