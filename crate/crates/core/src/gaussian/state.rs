//! Covariance matrices, the standard form and the symplectic invariants.
//!
//! Convention: quadratures `x = a + a†`, `p = i(a† − a)`, so the vacuum has identity
//! covariance. Ordering is `(x1, p1, x2, p2)`; `A`, `B` are the local blocks and `C`
//! the cross-correlation block.

use nalgebra::{Cholesky, Matrix2, Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::symplectic::{block_diag, omega, z2, SymplecticMatrix};
use crate::numeric::clamped_sqrt;

pub const SYMMETRY_TOL: f64 = 1e-12;
/// Tolerance on `ν₋ ≥ 1`, and on the classicality and separability thresholds.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// Symplectic eigenvalues `ν₋ ≤ ν₊` and the invariant they were computed from
/// (`Δ` for the state itself, `E` for its partial transpose).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub delta: f64,
}

impl SymplecticSpectrum {
    /// `ν±² = (Δ ± √(Δ² − 4 det σ)) / 2`. `ν₋` is recovered as `√det σ / ν₊`,
    /// which avoids cancellation for strongly mixed states.
    pub fn from_invariants(delta: f64, det: f64) -> Result<Self> {
        let disc = clamped_sqrt(delta * delta - 4.0 * det, 1e3 * delta * delta, "symplectic spectrum")?;
        let nu_plus_sq = 0.5 * (delta + disc);
        if !(nu_plus_sq > 0.0 && det > 0.0) {
            return Err(Error::NumericalDomain(format!(
                "symplectic spectrum undefined for Δ = {delta}, det = {det}"
            )));
        }
        let nu_plus = nu_plus_sq.sqrt();
        let nu_minus = det.sqrt() / nu_plus;
        Ok(Self {
            nu_minus,
            nu_plus,
            delta,
        })
    }

    /// Symplectic eigenvalues as the singular values of `σ^{1/2} Ω σ^{1/2}`, which
    /// come in equal pairs. Unlike the invariant formula this stays accurate when
    /// `ν₋ ≈ ν₊`, e.g. for pure states.
    pub fn of_matrix(m: &Matrix4<f64>, delta: f64) -> Result<Self> {
        let eig = SymmetricEigen::new(*m);
        if eig.eigenvalues.min() <= 0.0 {
            return Err(Error::NumericalDomain("matrix is not positive definite".into()));
        }
        let root =
            eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * eig.eigenvectors.transpose();
        let mut sv: Vec<f64> = (root * omega() * root).singular_values().iter().copied().collect();
        sv.sort_by(f64::total_cmp);
        Ok(Self {
            nu_minus: 0.5 * (sv[0] + sv[1]),
            nu_plus: 0.5 * (sv[2] + sv[3]),
            delta,
        })
    }
}

/// Covariance matrix of a zero-mean two-mode Gaussian state.
///
/// Construction through [`CovarianceMatrix::new`] checks symmetry, positive
/// definiteness and the bona fide condition `ν₋ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

impl CovarianceMatrix {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        check_physical(&m)?;
        Ok(Self(symmetrize(&m)))
    }

    /// For matrices produced by symplectic congruence of a physical state.
    pub(crate) fn from_trusted(m: Matrix4<f64>) -> Self {
        Self(symmetrize(&m))
    }

    pub fn vacuum() -> Self {
        Self(Matrix4::identity())
    }

    /// Two-mode squeezed vacuum `S₂(r) S₂(r)ᵀ`.
    pub fn tmsv(r: f64) -> Self {
        let s = SymplecticMatrix::two_mode_squeezer(r);
        s.apply(&Self::vacuum())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// `(𝟙 ⊕ Z) σ (𝟙 ⊕ Z)`; generally not a physical covariance matrix.
    pub fn partial_transpose(&self) -> Matrix4<f64> {
        let t = block_diag(&Matrix2::identity(), &z2());
        t * self.0 * t
    }

    /// Returns `(μ, μ_a, μ_b)` with `μ = 1/√det σ` and the local purities from `A`, `B`.
    pub fn purities(&self) -> (f64, f64, f64) {
        (
            1.0 / self.det().sqrt(),
            1.0 / self.block_a().determinant().sqrt(),
            1.0 / self.block_b().determinant().sqrt(),
        )
    }

    /// `Δ = det A + det B + 2 det C`.
    pub fn delta(&self) -> f64 {
        self.block_a().determinant() + self.block_b().determinant() + 2.0 * self.block_c().determinant()
    }

    /// `E = det A + det B − 2 det C`.
    pub fn delta_pt(&self) -> f64 {
        self.block_a().determinant() + self.block_b().determinant() - 2.0 * self.block_c().determinant()
    }

    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum> {
        SymplecticSpectrum::of_matrix(&self.0, self.delta())
    }

    pub fn pt_spectrum(&self) -> Result<SymplecticSpectrum> {
        SymplecticSpectrum::of_matrix(&self.partial_transpose(), self.delta_pt())
    }

    /// Peres-Horodecki: separable iff `ν^Γ₋ ≥ 1` (up to [`PHYSICAL_TOL`]).
    pub fn is_separable(&self) -> bool {
        match self.pt_spectrum() {
            Ok(s) => s.nu_minus >= 1.0 - PHYSICAL_TOL,
            Err(_) => false,
        }
    }

    /// Classical iff the standard-form expansion satisfies `σ^sf ≥ 𝟙`.
    pub fn is_classical(&self) -> bool {
        match self.reduce_to_standard_form() {
            Ok((sf, _)) => sf.min_eigenvalue() >= 1.0 - PHYSICAL_TOL,
            Err(_) => false,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.0).eigenvalues.min()
    }

    /// Brings the state to standard form with local symplectic operations.
    ///
    /// Each mode is first normalised to a multiple of the identity with
    /// `(det A)^{1/4} A^{-1/2}`, then a singular value decomposition of the
    /// transformed `C` supplies the two local rotations. The returned `S`
    /// satisfies `S σ Sᵀ = expand(sf)`; it is block diagonal unless the modes had
    /// to be exchanged to reach `a ≥ b`, in which case it also contains the swap.
    pub fn reduce_to_standard_form(&self) -> Result<(StandardForm, SymplecticMatrix)> {
        check_physical(&self.0)?;
        let (sa, a) = normalize_mode(&self.block_a())?;
        let (sb, b) = normalize_mode(&self.block_b())?;
        let c = sa * self.block_c() * sb.transpose();

        let svd = c.svd(true, true);
        let mut u = svd.u.ok_or(Error::SingularTransform)?;
        let mut v_t = svd.v_t.ok_or(Error::SingularTransform)?;
        let mut sv = svd.singular_values;
        if sv[0] < sv[1] {
            u.swap_columns(0, 1);
            v_t.swap_rows(0, 1);
            sv.swap_rows(0, 1);
        }
        let c1 = sv[0];
        let mut c2 = sv[1];
        if u.determinant() < 0.0 {
            u.column_mut(1).neg_mut();
            c2 = -c2;
        }
        if v_t.determinant() < 0.0 {
            v_t.row_mut(1).neg_mut();
            c2 = -c2;
        }
        // sign of a vanishing c2 is arbitrary; keep it non-positive
        if c2 > 0.0 && c2 <= 1e-14 * c1.max(1.0) {
            c2 = 0.0;
        }

        let mut s = block_diag(&(u.transpose() * sa), &(v_t * sb));
        let (mut a, mut b) = (a, b);
        if a < b {
            s = SymplecticMatrix::mode_swap().matrix() * s;
            std::mem::swap(&mut a, &mut b);
        }
        let sf = StandardForm::new(a, b, c1, c2)?;
        Ok((sf, SymplecticMatrix::from_trusted(s)))
    }
}

fn symmetrize(m: &Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}

/// Symmetric, positive definite and `ν₋ ≥ 1 − PHYSICAL_TOL`.
pub fn check_physical(m: &Matrix4<f64>) -> Result<()> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotPhysical("non-finite entry".into()));
    }
    let asym = (m - m.transpose()).amax();
    if asym > SYMMETRY_TOL * m.amax().max(1.0) {
        return Err(Error::NotPhysical(format!("not symmetric (defect {asym:e})")));
    }
    let sym = symmetrize(m);
    if Cholesky::new(sym).is_none() {
        return Err(Error::NotPhysical("not positive definite".into()));
    }
    let c = CovarianceMatrix(sym);
    let spec = c
        .symplectic_spectrum()
        .map_err(|e| Error::NotPhysical(format!("spectrum unavailable: {e}")))?;
    if spec.nu_minus < 1.0 - PHYSICAL_TOL {
        return Err(Error::NotPhysical(format!(
            "smallest symplectic eigenvalue {} < 1",
            spec.nu_minus
        )));
    }
    Ok(())
}

/// Returns `(S, a)` with `S` of unit determinant and `S A Sᵀ = a 𝟙`, `a = √det A`.
fn normalize_mode(block: &Matrix2<f64>) -> Result<(Matrix2<f64>, f64)> {
    let eig = SymmetricEigen::new(*block);
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if !(l0 > 0.0 && l1 > 0.0) {
        return Err(Error::NotPhysical("local block not positive definite".into()));
    }
    let a = (l0 * l1).sqrt();
    let v = eig.eigenvectors;
    let inv_sqrt = Matrix2::from_diagonal(&nalgebra::Vector2::new(1.0 / l0.sqrt(), 1.0 / l1.sqrt()));
    let s = v * inv_sqrt * v.transpose() * a.sqrt();
    Ok((s, a))
}

/// Standard form `A = a𝟙`, `B = b𝟙`, `C = diag(c1, c2)` with `a ≥ b` and `c1 ≥ |c2|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StandardFormFields", into = "StandardFormFields")]
pub struct StandardForm {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct StandardFormFields {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

impl TryFrom<StandardFormFields> for StandardForm {
    type Error = Error;

    fn try_from(f: StandardFormFields) -> Result<Self> {
        StandardForm::new(f.a, f.b, f.c1, f.c2)
    }
}

impl From<StandardForm> for StandardFormFields {
    fn from(sf: StandardForm) -> Self {
        Self {
            a: sf.a,
            b: sf.b,
            c1: sf.c1,
            c2: sf.c2,
        }
    }
}

impl StandardForm {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        if ![a, b, c1, c2].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParams("non-finite standard-form entry".into()));
        }
        let tol = 1e-12 * a.max(1.0);
        if a < b - tol {
            return Err(Error::InvalidParams(format!(
                "mode ordering requires a ≥ b (a = {a}, b = {b})"
            )));
        }
        if c1 < c2.abs() - tol {
            return Err(Error::InvalidParams(format!(
                "requires c1 ≥ |c2| (c1 = {c1}, c2 = {c2})"
            )));
        }
        let sf = Self { a, b, c1, c2 };
        check_physical(&sf.matrix())?;
        Ok(sf)
    }

    pub fn vacuum() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c1: 0.0,
            c2: 0.0,
        }
    }

    /// Two-mode squeezed vacuum with squeezing `|r|`.
    pub fn tmsv(r: f64) -> Self {
        let t = 2.0 * r.abs();
        Self {
            a: t.cosh(),
            b: t.cosh(),
            c1: t.sinh(),
            c2: -t.sinh(),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    fn matrix(&self) -> Matrix4<f64> {
        let (a, b, c1, c2) = (self.a, self.b, self.c1, self.c2);
        Matrix4::new(
            a, 0.0, c1, 0.0, //
            0.0, a, 0.0, c2, //
            c1, 0.0, b, 0.0, //
            0.0, c2, 0.0, b,
        )
    }

    pub fn expand(&self) -> CovarianceMatrix {
        CovarianceMatrix(self.matrix())
    }

    /// `det σ = (ab − c1²)(ab − c2²)`.
    pub fn det(&self) -> f64 {
        (self.a * self.b - self.c1 * self.c1) * (self.a * self.b - self.c2 * self.c2)
    }

    /// Smallest ordinary eigenvalue, from the decoupled `x` and `p` blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        let half_sum = 0.5 * (self.a + self.b);
        let half_diff = 0.5 * (self.a - self.b);
        let c = self.c1.abs().max(self.c2.abs());
        half_sum - half_diff.hypot(c)
    }

    pub fn is_separable(&self) -> bool {
        self.expand().is_separable()
    }

    pub fn is_symmetric(&self) -> bool {
        (self.a - self.b).abs() <= 1e-12 * self.a
    }

    pub fn is_pure(&self) -> bool {
        (self.det() - 1.0).abs() <= PHYSICAL_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thermal(a: f64, b: f64) -> CovarianceMatrix {
        CovarianceMatrix::new(Matrix4::from_diagonal(&nalgebra::Vector4::new(a, a, b, b))).unwrap()
    }

    #[test]
    fn vacuum_expands_to_identity() {
        assert_eq!(*StandardForm::vacuum().expand().matrix(), Matrix4::identity());
        assert_eq!(
            *StandardForm::new(1.0, 1.0, 0.0, 0.0).unwrap().expand().matrix(),
            Matrix4::identity()
        );
    }

    #[test]
    fn tmsv_standard_form_matches_squeezer_on_vacuum() {
        let r = 1.0;
        let sf = StandardForm::new((2.0f64).cosh(), (2.0f64).cosh(), (2.0f64).sinh(), -(2.0f64).sinh()).unwrap();
        let diff = sf.expand().matrix() - CovarianceMatrix::tmsv(r).matrix();
        assert!(diff.amax() <= 1e-12);
    }

    #[test]
    fn block_determinants() {
        let sf = StandardForm::new(3.0, 2.0, 1.5, -0.7).unwrap();
        let c = sf.expand();
        assert!((c.block_a().determinant() - 9.0).abs() < 1e-12);
        assert!((c.block_c().determinant() - 1.5 * -0.7).abs() < 1e-12);
        assert!((c.det() - sf.det()).abs() < 1e-10);
    }

    #[test]
    fn spectra_of_simple_states() {
        let vac = CovarianceMatrix::vacuum().symplectic_spectrum().unwrap();
        assert!((vac.nu_minus - 1.0).abs() < 1e-12 && (vac.nu_plus - 1.0).abs() < 1e-12);

        let t = CovarianceMatrix::tmsv(0.8);
        let s = t.symplectic_spectrum().unwrap();
        assert!((s.nu_minus - 1.0).abs() < 1e-9 && (s.nu_plus - 1.0).abs() < 1e-9);
        let pt = t.pt_spectrum().unwrap();
        assert!((pt.nu_minus - (-1.6f64).exp()).abs() < 1e-9);
        assert!((pt.nu_plus - 1.6f64.exp()).abs() < 1e-9);

        let th = thermal(3.0, 2.0).symplectic_spectrum().unwrap();
        assert!((th.nu_minus - 2.0).abs() < 1e-12 && (th.nu_plus - 3.0).abs() < 1e-12);
        assert!((th.delta - 13.0).abs() < 1e-12);
    }

    #[test]
    fn purities_of_simple_states() {
        let (mu, ma, mb) = CovarianceMatrix::vacuum().purities();
        assert_eq!((mu, ma, mb), (1.0, 1.0, 1.0));
        let (mu, ma, mb) = CovarianceMatrix::tmsv(0.6).purities();
        assert!((mu - 1.0).abs() < 1e-9);
        assert!((ma - 1.0 / 1.2f64.cosh()).abs() < 1e-12 && (mb - ma).abs() < 1e-12);
        let (mu, ma, mb) = thermal(3.0, 2.0).purities();
        assert!((mu - 1.0 / 6.0).abs() < 1e-12 && (ma - 1.0 / 3.0).abs() < 1e-12 && (mb - 0.5).abs() < 1e-12);
    }

    #[test]
    fn classicality_and_separability_predicates() {
        assert!(CovarianceMatrix::vacuum().is_classical());
        assert!(CovarianceMatrix::vacuum().is_separable());
        assert!(!CovarianceMatrix::tmsv(0.3).is_classical());
        assert!(!CovarianceMatrix::tmsv(0.5).is_separable());
        assert!(thermal(3.0, 2.0).is_classical());
        assert!(thermal(3.0, 2.0).is_separable());
    }

    #[test]
    fn rejects_unphysical_matrices() {
        let squeezed_too_much = Matrix4::from_diagonal(&nalgebra::Vector4::new(0.5, 0.5, 1.0, 1.0));
        assert!(matches!(
            CovarianceMatrix::new(squeezed_too_much),
            Err(Error::NotPhysical(_))
        ));
        let mut asym = Matrix4::identity();
        asym[(0, 1)] = 0.1;
        assert!(matches!(CovarianceMatrix::new(asym), Err(Error::NotPhysical(_))));
        assert!(StandardForm::new(2.0, 3.0, 0.0, 0.0).is_err());
        assert!(StandardForm::new(3.0, 2.0, 0.5, 0.9).is_err());
        assert!(StandardForm::new(2.0, 2.0, 1.99, -1.99).is_err());
    }

    #[test]
    fn thermal_reduces_to_ordered_diagonal_form() {
        let (sf, _) = thermal(2.0, 3.0).reduce_to_standard_form().unwrap();
        assert!((sf.a() - 3.0).abs() < 1e-12 && (sf.b() - 2.0).abs() < 1e-12);
        assert_eq!((sf.c1(), sf.c2()), (0.0, 0.0));
        let (sf, _) = thermal(3.0, 2.0).reduce_to_standard_form().unwrap();
        assert!((sf.a() - 3.0).abs() < 1e-12 && (sf.b() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reduction_of_standard_form_is_trivial() {
        let sf = StandardForm::new(3.0, 2.0, 1.5, -0.7).unwrap();
        let (back, s) = sf.expand().reduce_to_standard_form().unwrap();
        assert!((back.a() - 3.0).abs() < 1e-12);
        assert!((back.b() - 2.0).abs() < 1e-12);
        assert!((back.c1() - 1.5).abs() < 1e-12);
        assert!((back.c2() + 0.7).abs() < 1e-12);
        // identity up to signs of the local axes
        let abs_s = s.matrix().map(f64::abs);
        assert!((abs_s - Matrix4::identity()).amax() < 1e-12);
    }

    #[test]
    fn rotated_tmsv_reduces_back() {
        let r = 0.65;
        let rotated = SymplecticMatrix::local_rotation(0.4, -1.1).apply(&CovarianceMatrix::tmsv(r));
        let (sf, s) = rotated.reduce_to_standard_form().unwrap();
        let t = (2.0 * r).cosh();
        assert!((sf.a() - t).abs() < 1e-9 && (sf.b() - t).abs() < 1e-9);
        assert!((sf.c1() - (2.0 * r).sinh()).abs() < 1e-9);
        assert!((sf.c2() + (2.0 * r).sinh()).abs() < 1e-9);
        assert!((sf.det() - rotated.det()).abs() < 1e-9);
        assert!((s.apply(&rotated).matrix() - sf.expand().matrix()).amax() < 1e-9);
    }
}
