//! Symplectic transformations on two modes, quadrature order `(x1, p1, x2, p2)`.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::gaussian::state::CovarianceMatrix;

const SYMPLECTIC_TOL: f64 = 1e-12;

/// Single-mode symplectic form `[[0, 1], [-1, 0]]`.
pub fn j2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// The two-mode symplectic form Ω = J ⊕ J.
pub fn omega() -> Matrix4<f64> {
    block_diag(&j2(), &j2())
}

/// Pauli-Z style `diag(1, -1)`.
pub fn z2() -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

pub(crate) fn block_diag(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// A 4×4 real matrix `S` with `S Ω Sᵀ = Ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix(Matrix4<f64>);

impl SymplecticMatrix {
    /// Validates the symplectic condition. The tolerance scales with the squared
    /// largest entry so strongly squeezing transformations are not rejected for rounding.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let residual = (m * omega() * m.transpose() - omega()).amax();
        let scale = m.amax().powi(2).max(1.0);
        if residual.is_finite() && residual <= SYMPLECTIC_TOL * scale {
            Ok(Self(m))
        } else {
            Err(Error::InvalidParams(format!(
                "matrix violates the symplectic condition by {residual:e}"
            )))
        }
    }

    pub(crate) fn from_trusted(m: Matrix4<f64>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Two-mode squeezer `[[cosh r 𝟙, sinh r Z], [sinh r Z, cosh r 𝟙]]`.
    pub fn two_mode_squeezer(r: f64) -> Self {
        let (ch, sh) = (r.cosh(), r.sinh());
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(Matrix2::identity() * ch));
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(Matrix2::identity() * ch));
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(z2() * sh));
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(z2() * sh));
        Self(m)
    }

    /// Local squeezers `exp(r1 Z) ⊕ exp(r2 Z)`.
    pub fn local_squeezer(r1: f64, r2: f64) -> Self {
        Self(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            r1.exp(),
            (-r1).exp(),
            r2.exp(),
            (-r2).exp(),
        )))
    }

    /// Independent phase rotations of the two modes.
    pub fn local_rotation(theta1: f64, theta2: f64) -> Self {
        Self(block_diag(&rotation(theta1), &rotation(theta2)))
    }

    /// `S_a ⊕ S_b`; each block must have unit determinant.
    pub fn local(s_a: Matrix2<f64>, s_b: Matrix2<f64>) -> Result<Self> {
        Self::new(block_diag(&s_a, &s_b))
    }

    /// Exchanges the two modes.
    pub fn mode_swap() -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 2)] = 1.0;
        m[(1, 3)] = 1.0;
        m[(2, 0)] = 1.0;
        m[(3, 1)] = 1.0;
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `S⁻¹ = Ω Sᵀ Ωᵀ`, exact for symplectic matrices.
    pub fn inverse(&self) -> Self {
        Self(omega() * self.0.transpose() * omega().transpose())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Composition `self · other`.
    pub fn then_after(&self, other: &SymplecticMatrix) -> Self {
        Self(self.0 * other.0)
    }

    /// Congruence `S σ Sᵀ`.
    pub fn apply(&self, c: &CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix::from_trusted(self.0 * c.matrix() * self.0.transpose())
    }

    /// `‖S Ω Sᵀ − Ω‖_max`, exposed for diagnostics and tests.
    pub fn symplectic_defect(&self) -> f64 {
        (self.0 * omega() * self.0.transpose() - omega()).amax()
    }
}

impl std::ops::Mul for SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix(self.0 * rhs.0)
    }
}
