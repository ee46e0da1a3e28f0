//! Error type shared by the numerical kernels, the analytics pipeline and
//! the Monte Carlo engine.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (error estimate {error_estimate:.3e}, requested {requested:.3e})"
    )]
    QuadratureNonConvergence {
        subdivisions: usize,
        error_estimate: f64,
        requested: f64,
    },

    /// The integrand produced NaN or an infinity at an interior point.
    #[error("integrand returned a non-finite value at x = {0:.6e}")]
    NonFiniteIntegrand(f64),

    /// The Gauss series only converges for |z| < 1.
    #[error("hypergeometric series diverges for |z| >= 1 (z = {0})")]
    SeriesDivergent(f64),

    /// The Gauss series failed to meet its tail bound within the term budget.
    #[error("hypergeometric series did not converge after {0} terms")]
    SeriesNonConvergence(usize),

    /// Moment pair cannot be matched by a beta distribution (zero or
    /// negative variance, or variance impossible for [0,1] support).
    #[error("degenerate moments: {0}")]
    DegenerateMoments(String),

    /// Geometry sampling kept producing empty windows.
    #[error("geometry sampling produced an empty window {0} times in a row")]
    EmptyWindow(u64),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
