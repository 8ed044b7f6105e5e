//! Entanglement of formation of two-mode Gaussian states.
//!
//! Covariance matrices follow the vacuum-equals-identity convention with
//! quadratures ordered `(x₁, p₁, x₂, p₂)`.

pub mod decomp;
pub mod ensemble;
pub mod eof;
pub mod error;
pub mod gaussian;
pub mod numeric;
pub mod optimize;
pub mod oracle;

pub use decomp::{
    classical_core, k_of, local_squeezings, r_lower, residual, Direction, LocalSqueezingScalars, LowerBoundScalars,
    Residual, SymplecticDecomposition,
};
pub use ensemble::{run_sweep, EnsembleRecord, SweepConfig, SweepSummary};
pub use eof::{
    conjecture_check, entropy_of_entanglement, eof_exact, eof_lower, eof_upper, squeezing_interval, ConjectureReport,
    EofOptions, EofResult,
};
pub use error::{Error, ErrorClass, Result};
pub use gaussian::{
    CovarianceMatrix, PurityParams, ResolvedState, StandardForm, StateInput, SymplecticMatrix, SymplecticSpectrum,
};
pub use oracle::{eof_oracle, OracleGrid};
