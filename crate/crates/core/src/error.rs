use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by state construction, the decomposition formulas and the sweep harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("purity round-trip mismatch: {0}")]
    ParametrizationMismatch(String),
    #[error("covariance matrix is not physical: {0}")]
    NotPhysical(String),
    #[error("state is not entangled (smallest partially transposed symplectic eigenvalue {0})")]
    NotEntangled(f64),
    #[error("numerical domain error: {0}")]
    NumericalDomain(String),
    #[error("singular transformation")]
    SingularTransform,
    #[error("golden-section refinement did not converge (bracket width {width:e} after {iterations} iterations)")]
    NoConvergence { width: f64, iterations: usize },
    #[error("oracle found no feasible pure-state decomposition")]
    NoFeasiblePoint,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("sampler exhausted {0} attempts without an accepted state")]
    ExhaustedAttempts(usize),
    #[error("relative difference undefined for exact value {0:e}")]
    DivisionByZero(f64),
    #[error("malformed state description: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidInput,
    Numerical,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidParams(_)
            | Error::ParametrizationMismatch(_)
            | Error::NotPhysical(_)
            | Error::NotEntangled(_)
            | Error::NotApplicable(_)
            | Error::Parse(_) => ErrorClass::InvalidInput,
            Error::NumericalDomain(_)
            | Error::SingularTransform
            | Error::NoConvergence { .. }
            | Error::NoFeasiblePoint
            | Error::ExhaustedAttempts(_)
            | Error::DivisionByZero(_) => ErrorClass::Numerical,
            Error::Io(_) => ErrorClass::Io,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Parse(e.to_string())
        }
    }
}
