//! Two-mode Gaussian states: covariance matrices, standard form, symplectic
//! transformations and the classicality and separability predicates.

pub mod input;
pub mod params;
pub mod state;
pub mod symplectic;

pub use input::{ResolvedState, StateInput};
pub use params::{DerivedParams, PurityParams};
pub use state::{check_physical, CovarianceMatrix, StandardForm, SymplecticSpectrum, PHYSICAL_TOL};
pub use symplectic::{omega, SymplecticMatrix};
