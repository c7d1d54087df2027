use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quartic trajectory reaches the pole of `nc` before half the period.
    #[error("trajectory pole: q_t = {q_t} exceeds q_Theta = {q_theta} at Theta = {theta}")]
    Pole { q_t: f64, theta: f64, q_theta: f64 },

    /// A removable singularity that the caller must route to the harmonic branch.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An iterative method did not converge.
    #[error("no convergence in {what}: {detail}")]
    Convergence { what: &'static str, detail: String },

    /// A matrix that must be inverted is (numerically) singular.
    #[error("singular matrix in {what}: condition number {condition:e}")]
    Singular { what: &'static str, condition: f64 },

    /// A fluctuation determinant is not positive.
    #[error("conjugate point: determinant {determinant:e} is not positive")]
    ConjugatePoint { determinant: f64 },

    /// Adaptive quadrature could not reach the requested accuracy.
    #[error("quadrature failed: achieved error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// An adaptive ODE step size became too small.
    #[error("integration failed at t = {t}: {detail}")]
    Integration { t: f64, detail: String },

    /// A truncated spectral sum misses non-negligible terms.
    #[error("spectrum truncated too early: omitted term {omitted:e} vs partial sum {partial:e}")]
    Truncation { omitted: f64, partial: f64 },

    /// Finite differences of ln Z are dominated by noise.
    #[error("specific heat step collapse at Theta = {theta}: error estimate {estimate:e}")]
    StepCollapse { theta: f64, estimate: f64 },

    /// Curves handed to a comparison do not share a temperature grid.
    #[error("temperature grids differ between configurations")]
    GridMismatch,

    /// A failure while evaluating one point of a temperature grid.
    #[error("at Theta = {theta}: {source}")]
    AtTheta { theta: f64, source: Box<Error> },

    /// Invalid run configuration.
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
