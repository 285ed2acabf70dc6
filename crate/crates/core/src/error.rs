use thiserror::Error;

/// Errors raised by the bath, decoherence and QFI routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error(
        "quadrature did not converge: value {value:e}, estimated error {est_error:e} after {evaluations} evaluations"
    )]
    Convergence {
        value: f64,
        est_error: f64,
        evaluations: usize,
    },

    /// Inputs that cannot come from a consistent evaluation (e.g. Γ = 0 with ∂Γ ≠ 0).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A sweep or grid point failed; carries the offending axis value.
    #[error("evaluation failed at {axis} = {value}: {source}")]
    AtPoint {
        axis: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True if the root cause is a numerical (quadrature) failure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Convergence { .. } | Error::Degenerate(_) => true,
            Error::Domain(_) => false,
            Error::AtPoint { source, .. } => source.is_numerical(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
