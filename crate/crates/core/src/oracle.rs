//! Brute-force reference for the exact entanglement of formation of a standard form.
//!
//! Rotation-free pure states have covariance `P ⊕ P⁻¹` in `(x₁, x₂ | p₁, p₂)`
//! blocks, so `σ ≥ σ_p` reduces to the Loewner interval `σ_p-block⁻¹ ≤ P ≤ σ_x-block`.
//! Writing `P = A + D^{1/2} X D^{1/2}` with `D = B − A` and `0 ≤ X ≤ I`, the grid
//! runs over the eigenvalues of `X` in `[0, 1]²` and its rotation angle in `[0, π)`.
//! The two-mode squeezing of `P` is `sinh 2r = |P₁₂| / √det P`.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::eof::entropy_of_entanglement;
use crate::error::{Error, Result};
use crate::gaussian::StandardForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleGrid {
    pub n_eigen: usize,
    pub n_angle: usize,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            n_eigen: 120,
            n_angle: 400,
        }
    }
}

impl OracleGrid {
    /// Halves both spacings; every node of `self` is a node of the result.
    pub fn doubled(&self) -> Self {
        Self {
            n_eigen: 2 * self.n_eigen.max(2) - 1,
            n_angle: 2 * self.n_angle.max(1),
        }
    }
}

/// Minimum of `P₁₂² / det P` over the grid, or `None` if `P₁₂` changes sign
/// (a product pure state lies in the interval).
fn min_ratio(lower: &Matrix2<f64>, half: &Matrix2<f64>, grid: &OracleGrid) -> Option<f64> {
    let n_e = grid.n_eigen.max(2);
    let n_a = grid.n_angle.max(1);
    let lambdas: Vec<f64> = (0..n_e).map(|i| i as f64 / (n_e - 1) as f64).collect();
    let (mut pos, mut neg) = (false, false);
    let mut best = f64::INFINITY;

    for j in 0..n_a {
        let theta = std::f64::consts::PI * j as f64 / n_a as f64;
        let (s, c) = theta.sin_cos();
        let u = half * Vector2::new(c, s);
        let v = half * Vector2::new(-s, c);
        let uu = u * u.transpose();
        let vv = v * v.transpose();
        for &l1 in &lambdas {
            let p1 = lower + uu * l1;
            for &l2 in &lambdas {
                let (p11, p12, p22) = (
                    p1[(0, 0)] + l2 * vv[(0, 0)],
                    p1[(0, 1)] + l2 * vv[(0, 1)],
                    p1[(1, 1)] + l2 * vv[(1, 1)],
                );
                if p12 > 0.0 {
                    pos = true;
                } else if p12 < 0.0 {
                    neg = true;
                } else {
                    return None;
                }
                let ratio = p12 * p12 / (p11 * p22 - p12 * p12);
                if ratio < best {
                    best = ratio;
                }
            }
        }
        if pos && neg {
            return None;
        }
    }
    Some(best)
}

fn psd_sqrt(m: &Matrix2<f64>, scale: f64) -> Result<Matrix2<f64>> {
    let eig = m.symmetric_eigen();
    if eig.eigenvalues.min() < -1e-9 * scale {
        return Err(Error::NoFeasiblePoint);
    }
    let roots = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    Ok(eig.eigenvectors * Matrix2::from_diagonal(&roots) * eig.eigenvectors.transpose())
}

/// Entanglement of formation (ebits) by exhaustive search over rotation-free
/// pure states below `σ`. Converges to the exact value from above as the grid
/// is refined.
pub fn eof_oracle(sf: &StandardForm, grid: &OracleGrid) -> Result<f64> {
    let (a, b, c1, c2) = (sf.a(), sf.b(), sf.c1(), sf.c2());
    let upper = Matrix2::new(a, c1, c1, b);
    let lower = Matrix2::new(a, c2, c2, b).try_inverse().ok_or(Error::NoFeasiblePoint)?;
    let half = psd_sqrt(&(upper - lower), a)?;
    match min_ratio(&lower, &half, grid) {
        None => Ok(0.0),
        Some(ratio) if ratio.is_finite() => Ok(entropy_of_entanglement(0.5 * ratio.sqrt().asinh())),
        Some(_) => Err(Error::NoFeasiblePoint),
    }
}
