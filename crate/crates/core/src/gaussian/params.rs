//! Generation of standard forms from local and global purities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::state::StandardForm;
use crate::numeric::BOUNDARY_TOL;

const ROUND_TRIP_TOL: f64 = 1e-6;

/// Purity coordinates `(μ_a, μ_b, μ, β)`.
///
/// `β = −1` selects the least entangled states at fixed purities (`ν₋ = 1`) and
/// `β = 1` the most entangled ones (`c1 = −c2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PurityParams {
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu: f64,
    pub beta: f64,
}

/// Intermediate quantities of the purity parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub s: f64,
    pub d: f64,
    pub g: f64,
    pub z: f64,
    pub w: f64,
}

impl PurityParams {
    /// Builds the tuple from `s = (a+b)/2`, `d = (a−b)/2` and `g = 1/μ`.
    pub fn from_sdg(s: f64, d: f64, g: f64, beta: f64) -> Self {
        Self {
            mu_a: 1.0 / (s + d),
            mu_b: 1.0 / (s - d),
            mu: 1.0 / g,
            beta,
        }
    }

    /// Same state with the modes exchanged, so that `μ_a ≤ μ_b` (`a ≥ b`).
    pub fn mode_ordered(&self) -> Self {
        if self.mu_a <= self.mu_b {
            *self
        } else {
            Self {
                mu_a: self.mu_b,
                mu_b: self.mu_a,
                ..*self
            }
        }
    }

    pub fn derived(&self) -> Result<DerivedParams> {
        let Self { mu_a, mu_b, mu, beta } = *self;
        for (name, v) in [("mu_a", mu_a), ("mu_b", mu_b), ("mu", mu)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidParams(format!("{name} = {v} outside (0, 1]")));
            }
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParams(format!("beta = {beta} outside [-1, 1]")));
        }
        let (a, b, g) = (1.0 / mu_a, 1.0 / mu_b, 1.0 / mu);
        let s = 0.5 * (a + b);
        let d = 0.5 * (a - b);
        let tol = BOUNDARY_TOL * s;
        if d.abs() > s - 1.0 + tol {
            return Err(Error::InvalidParams(format!(
                "|d| = {} exceeds s − 1 = {}",
                d.abs(),
                s - 1.0
            )));
        }
        if g < 2.0 * d.abs() + 1.0 - BOUNDARY_TOL * g {
            return Err(Error::InvalidParams(format!(
                "g = {g} below 2|d| + 1 = {}",
                2.0 * d.abs() + 1.0
            )));
        }

        let shift = (beta - 1.0) * (1.0 + g * g) - 2.0 * (beta + 1.0) * (2.0 * d * d + g);
        let z = radical(8.0 * d * d + shift, g, "z")?;
        let w = radical(8.0 * s * s + shift, g, "w")?;
        Ok(DerivedParams { s, d, g, z, w })
    }
}

/// `√(x² − 16 g²)`, clamped to zero when the radicand vanishes up to rounding.
fn radical(x: f64, g: f64, name: &str) -> Result<f64> {
    let rad = x * x - 16.0 * g * g;
    let scale = x * x + 16.0 * g * g;
    if rad >= BOUNDARY_TOL * scale {
        Ok(rad.sqrt())
    } else if rad >= -BOUNDARY_TOL * scale {
        Ok(0.0)
    } else {
        Err(Error::InvalidParams(format!(
            "radicand of {name} is negative ({rad:e})"
        )))
    }
}

impl StandardForm {
    /// `a = 1/μ_a`, `b = 1/μ_b`, `c1,2 = (z ± w) √(μ_a μ_b) / 8`.
    ///
    /// When `μ_a > μ_b` the modes are exchanged so the result keeps `a ≥ b`; the
    /// correlations only depend on `d²` so nothing else changes. The output is
    /// checked by recomputing the three purities from the covariance matrix.
    pub fn from_purity_params(p: &PurityParams) -> Result<StandardForm> {
        let p = p.mode_ordered();
        let DerivedParams { z, w, .. } = p.derived()?;
        let scale = (p.mu_a * p.mu_b).sqrt() / 8.0;
        let (a, b) = (1.0 / p.mu_a, 1.0 / p.mu_b);
        let (c1, c2) = ((z + w) * scale, (z - w) * scale);
        let sf = StandardForm::new(a, b, c1, c2).map_err(|e| match e {
            Error::NotPhysical(msg) => Error::InvalidParams(format!("parameters map to a non-physical state: {msg}")),
            other => other,
        })?;

        let (mu, mu_a, mu_b) = sf.expand().purities();
        let rel = |x: f64, y: f64| ((x - y) / y).abs();
        let worst = rel(mu, p.mu).max(rel(mu_a, p.mu_a)).max(rel(mu_b, p.mu_b));
        if worst > ROUND_TRIP_TOL {
            return Err(Error::ParametrizationMismatch(format!(
                "recomputed purities ({mu}, {mu_a}, {mu_b}) differ from ({}, {}, {}) by {worst:e}",
                p.mu, p.mu_a, p.mu_b
            )));
        }
        Ok(sf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_vacuum_limit() {
        for beta in [-1.0, -0.3, 0.0, 1.0] {
            let sf = StandardForm::from_purity_params(&PurityParams {
                mu_a: 1.0,
                mu_b: 1.0,
                mu: 1.0,
                beta,
            })
            .unwrap();
            assert_eq!((sf.a(), sf.b()), (1.0, 1.0));
            assert!(sf.c1().abs() < 1e-12 && sf.c2().abs() < 1e-12);
        }
    }

    #[test]
    fn gmems_have_opposite_correlations() {
        let p = PurityParams::from_sdg(3.0, 0.8, 2.8, 1.0);
        let sf = StandardForm::from_purity_params(&p).unwrap();
        assert_eq!(sf.c1(), -sf.c2());
    }

    #[test]
    fn glems_have_unit_lower_symplectic_eigenvalue() {
        let p = PurityParams::from_sdg(3.0, 0.8, 2.7, -1.0);
        let sf = StandardForm::from_purity_params(&p).unwrap();
        let nu = sf.expand().symplectic_spectrum().unwrap();
        assert!((nu.nu_minus - 1.0).abs() < 1e-9);
        assert!((nu.nu_plus - 2.7).abs() < 1e-9);
    }

    #[test]
    fn mode_order_is_normalised() {
        let p = PurityParams::from_sdg(3.0, -0.8, 2.8, 0.2);
        let q = PurityParams::from_sdg(3.0, 0.8, 2.8, 0.2);
        let sp = StandardForm::from_purity_params(&p).unwrap();
        let sq = StandardForm::from_purity_params(&q).unwrap();
        assert_eq!(sp, sq);
        assert!(sp.a() >= sp.b());
    }

    #[test]
    fn rejects_out_of_range_tuples() {
        let bad = [
            PurityParams {
                mu_a: 1.2,
                mu_b: 0.5,
                mu: 0.3,
                beta: 0.0,
            },
            PurityParams {
                mu_a: 0.5,
                mu_b: 0.5,
                mu: 0.3,
                beta: 1.5,
            },
            PurityParams {
                mu_a: 0.5,
                mu_b: 0.5,
                mu: 0.0,
                beta: 0.0,
            },
            // g < 2|d| + 1
            PurityParams::from_sdg(3.0, 1.5, 3.5, 0.0),
            // |d| > s - 1
            PurityParams::from_sdg(1.5, 0.8, 3.0, 0.0),
        ];
        for p in bad {
            assert!(
                matches!(StandardForm::from_purity_params(&p), Err(Error::InvalidParams(_))),
                "{p:?}"
            );
        }
    }
}
