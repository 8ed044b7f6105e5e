//! Pure-state decompositions `σ = σ_p + φ` built from a two-mode squeezer and
//! two local squeezers, in either order.
//!
//! The reverse ordering `S₂(r′) L(r′₁, r′₂)` gives the minimal two-mode
//! squeezing `r₋` in closed form, together with the local squeezings that
//! accompany any `r′ ≥ r₋`. The map [`k_of`] converts such a preparation to the
//! two-mode squeezing of the equivalent forward ordering `L(k₁, k₂) S₂(k)`,
//! which is what the entropy of entanglement is evaluated on.

use nalgebra::{Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, StandardForm, SymplecticMatrix, PHYSICAL_TOL};
use crate::numeric::{clamped_acosh, clamped_sqrt, BOUNDARY_TOL};

/// Residuals with smallest eigenvalue above `-RESIDUAL_TOL` count as positive semidefinite.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `Σ→ = L(r₁, r₂) S₂(r)`
    Forward,
    /// `Σ← = S₂(r) L(r₁, r₂)`
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticDecomposition {
    pub direction: Direction,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
}

impl SymplecticDecomposition {
    pub fn forward(r: f64, r1: f64, r2: f64) -> Self {
        Self {
            direction: Direction::Forward,
            r,
            r1,
            r2,
        }
    }

    pub fn reverse(r: f64, r1: f64, r2: f64) -> Self {
        Self {
            direction: Direction::Reverse,
            r,
            r1,
            r2,
        }
    }

    pub fn transform(&self) -> SymplecticMatrix {
        let s2 = SymplecticMatrix::two_mode_squeezer(self.r);
        let l = SymplecticMatrix::local_squeezer(self.r1, self.r2);
        match self.direction {
            Direction::Forward => l * s2,
            Direction::Reverse => s2 * l,
        }
    }

    /// The pure state `Σ Σᵀ` prepared from vacuum.
    pub fn assemble_pure(&self) -> CovarianceMatrix {
        self.transform().apply(&CovarianceMatrix::vacuum())
    }

    /// The forward decomposition preparing the same pure state.
    ///
    /// Read off from the `x` block `M` of the pure state: `cosh 2k = √(M₁₁M₂₂/det M)`,
    /// `e^{2k_i} = M_ii / cosh 2k`.
    pub fn to_forward(&self) -> Result<SymplecticDecomposition> {
        if self.direction == Direction::Forward {
            return Ok(*self);
        }
        let m = *self.assemble_pure().matrix();
        let (m11, m22, m12) = (m[(0, 0)], m[(2, 2)], m[(0, 2)]);
        let det = m11 * m22 - m12 * m12;
        let cosh_2k = (m11 * m22 / det).sqrt();
        let k = 0.5 * clamped_acosh(cosh_2k, "forward equivalent")? * m12.signum();
        Ok(SymplecticDecomposition::forward(
            k,
            0.5 * (m11 / cosh_2k).ln(),
            0.5 * (m22 / cosh_2k).ln(),
        ))
    }
}

/// `κ` and `λ±` entering the minimal two-mode squeezing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundScalars {
    pub kappa: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl LowerBoundScalars {
    pub fn of(sf: &StandardForm) -> Self {
        let (a, b, c1, c2) = (sf.a(), sf.b(), sf.c1(), sf.c2());
        let kappa = 2.0 * (sf.det() + 1.0) - (a - b).powi(2);
        let base = a * a + b * b - 2.0 * c1 * c2 + 2.0 * (a * b - c1 * c2);
        let cross = 2.0 * (c1 - c2) * (a + b);
        Self {
            kappa,
            lambda_plus: base + cross,
            lambda_minus: base - cross,
        }
    }
}

/// Minimal two-mode squeezing `r₋ = ½ ln √[(κ − √(κ² − λ₊λ₋)) / λ₋]` of the
/// reverse preparation.
pub fn r_lower(sf: &StandardForm) -> Result<(f64, LowerBoundScalars)> {
    let nu_pt = sf.expand().pt_spectrum()?.nu_minus;
    if nu_pt >= 1.0 - PHYSICAL_TOL {
        return Err(Error::NotEntangled(nu_pt));
    }
    let scalars = LowerBoundScalars::of(sf);
    let r = r_lower_unchecked(sf, &scalars)?;
    Ok((r, scalars))
}

/// `κ² − λ₊λ₋ = 4[(det σ − 1)² − (a − b)²(x + 1)(y + 1)]` with `x = ab − c1²`,
/// `y = ab − c2²`. Reduces to `4(det σ − 1)²` for `a = b`, so pure states do not
/// lose half their digits to the square root.
fn r_lower_radicand(sf: &StandardForm) -> f64 {
    let (a, b, c1, c2) = (sf.a(), sf.b(), sf.c1(), sf.c2());
    let (x, y) = (a * b - c1 * c1, a * b - c2 * c2);
    4.0 * ((x * y - 1.0).powi(2) - (a - b).powi(2) * (x + 1.0) * (y + 1.0))
}

fn r_lower_unchecked(sf: &StandardForm, s: &LowerBoundScalars) -> Result<f64> {
    let LowerBoundScalars {
        kappa,
        lambda_plus,
        lambda_minus,
    } = *s;
    let root = clamped_sqrt(r_lower_radicand(sf), kappa * kappa, "r₋ radicand")?;
    // (κ − √(κ² − λ₊λ₋)) / λ₋ = λ₊ / (κ + √(κ² − λ₊λ₋)); the latter does not cancel
    let ratio = if kappa > 0.0 {
        lambda_plus / (kappa + root)
    } else {
        (kappa - root) / lambda_minus
    };
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::NumericalDomain(format!("r₋ logarithm argument {ratio}")));
    }
    let r = 0.25 * ratio.ln();
    if r < -BOUNDARY_TOL {
        return Err(Error::NumericalDomain(format!("negative minimal squeezing {r}")));
    }
    Ok(r.max(0.0))
}

/// Intermediate scalars of the closed-form local squeezings, evaluated at one `r′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSqueezingScalars {
    pub xi_plus: f64,
    pub xi_minus: f64,
    pub theta: f64,
    pub omega: f64,
    pub gamma: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub chi: f64,
}

/// The `r′`-independent part of the local-squeezing formulas for one state.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalSqueezing {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    det: f64,
    xi_plus: f64,
    xi_minus: f64,
    theta: f64,
    gamma: f64,
    zeta1: f64,
    /// `(a + b)² − 4 c1 c2`, the `cosh 4r′` coefficient of ζ₂.
    k4: f64,
    pure: bool,
    opposite: bool,
    pub(crate) r_minus: f64,
}

impl LocalSqueezing {
    pub(crate) fn new(sf: &StandardForm) -> Result<Self> {
        let (r_minus, _) = r_lower(sf)?;
        let (a, b, c1, c2) = (sf.a(), sf.b(), sf.c1(), sf.c2());
        let ab = a * b;
        Ok(Self {
            a,
            b,
            c1,
            c2,
            det: sf.det(),
            xi_plus: ab - c1 * c1 + 1.0,
            xi_minus: ab - c1 * c1 - 1.0,
            theta: ab * c2 - c1 * c1 * c2 + c1,
            gamma: 0.5 * (a * a * (b * b - 1.0) - ab * (c1 * c1 + c2 * c2) - b * b + (c1 * c2 - 1.0).powi(2)),
            zeta1: a * a * (2.0 * b * b - 1.0) - 2.0 * ab * (c1 * c1 + c2 * c2 - 1.0) - b * b
                + 2.0 * c1 * c1 * c2 * c2
                + 2.0,
            k4: (a + b).powi(2) - 4.0 * c1 * c2,
            pure: sf.is_pure(),
            opposite: (c1 + c2).abs() <= BOUNDARY_TOL * c1.abs().max(1.0),
            r_minus,
        })
    }

    /// `(r′₁, r′₂)` for a given `r′ ≥ r₋`.
    pub(crate) fn eval(&self, r_prime: f64) -> Result<(f64, f64, LocalSqueezingScalars)> {
        let Self {
            a,
            b,
            c1,
            c2,
            det,
            xi_plus,
            xi_minus,
            theta,
            gamma,
            zeta1,
            k4,
            ..
        } = *self;
        let at_boundary = (r_prime - self.r_minus).abs() <= BOUNDARY_TOL;
        if r_prime < self.r_minus && !at_boundary {
            return Err(Error::NumericalDomain(format!(
                "r′ = {r_prime} below the minimal squeezing {}",
                self.r_minus
            )));
        }
        let r = if at_boundary { self.r_minus } else { r_prime };
        let (sh2, ch2) = ((2.0 * r).sinh(), (2.0 * r).cosh());
        let sh4 = 2.0 * sh2 * ch2;
        // cosh 4r − 1 = 2 sinh² 2r, exact for small r
        let cosh4_m1 = 2.0 * sh2 * sh2;
        let zeta2 = 2.0 * (a + b) * (c1 - c2) * sh4 - (1.0 + cosh4_m1) * k4;
        let omega = (a - b) * ((a + b) * ch2 + (c2 - c1) * sh2);

        let mut scalars = LocalSqueezingScalars {
            xi_plus,
            xi_minus,
            theta,
            omega,
            gamma,
            zeta1,
            zeta2,
            chi: f64::NAN,
        };

        if self.opposite && at_boundary && !self.pure {
            // c1 = −c2: the two-mode squeezer alone reaches the boundary; the closed form
            // is 0/0 where such a state also has ν₋ = 1
            scalars.chi = 1.0;
            return Ok((0.0, 0.0, scalars));
        }
        if self.pure {
            // a pure state is its own optimal decomposition: no local squeezing at r₋
            if !at_boundary && (r_prime - self.r_minus).abs() > PHYSICAL_TOL {
                return Err(Error::NumericalDomain("a pure state admits only r′ = r₋".into()));
            }
            scalars.chi = 1.0;
            return Ok((0.0, 0.0, scalars));
        }

        // ζ₁ + ζ₂ vanishes identically at r₋
        let root = if at_boundary {
            0.0
        } else {
            let sum = (zeta1 - k4) + 2.0 * (a + b) * (c1 - c2) * sh4 - k4 * cosh4_m1;
            let scale =
                gamma.abs() * (zeta1.abs() + k4 * (1.0 + cosh4_m1) + 2.0 * (a + b) * (c1 - c2).abs() * sh4.abs());
            clamped_sqrt(gamma * sum, scale, "local squeezing radicand")?
        };

        let num1 = (a - b) * xi_plus - 2.0 * theta * sh2 - (a + b) * xi_minus * ch2;
        let den1 = omega - det + 1.0 + root;
        let num2 = (a - b) * xi_plus + 2.0 * theta * sh2 + (a + b) * xi_minus * ch2;
        let den2 = omega + det - 1.0 + root;
        let r1 = half_log_ratio(num1, den1, "r′₁")?;
        let r2 = half_log_ratio(num2, den2, "r′₂")?;
        scalars.chi = chi(r, r1, r2);
        Ok((r1, r2, scalars))
    }
}

fn half_log_ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    let q = num / den;
    if q.is_finite() && q > 0.0 {
        Ok(0.5 * q.ln())
    } else {
        Err(Error::NumericalDomain(format!(
            "{what}: logarithm argument {num}/{den}"
        )))
    }
}

fn chi(r: f64, r1: f64, r2: f64) -> f64 {
    let t2 = r.tanh().powi(2);
    (((-2.0 * r1).exp() + (-2.0 * r2).exp() * t2) / ((2.0 * r1).exp() + (2.0 * r2).exp() * t2)).sqrt()
}

/// Closed-form local squeezings `(r′₁, r′₂)` accompanying the two-mode squeezing
/// `r′` in the reverse preparation of `sf`. Inputs within `1e-12` below `r₋` are
/// treated as `r₋`.
pub fn local_squeezings(sf: &StandardForm, r_prime: f64) -> Result<(f64, f64, LocalSqueezingScalars)> {
    LocalSqueezing::new(sf)?.eval(r_prime)
}

/// Two-mode squeezing of the forward preparation equivalent to the reverse one
/// with parameters `(r′, r′₁, r′₂)`:
/// `k = ½ acosh[χ (e^{2r′₂} sinh² r′ + e^{2r′₁} cosh² r′)]`.
pub fn k_of(r_prime: f64, r1: f64, r2: f64) -> Result<f64> {
    let c = chi(r_prime, r1, r2);
    let arg = c * ((2.0 * r2).exp() * r_prime.sinh().powi(2) + (2.0 * r1).exp() * r_prime.cosh().powi(2));
    if !arg.is_finite() {
        return Err(Error::NumericalDomain(format!("k(r′) argument {arg}")));
    }
    Ok(0.5 * clamped_acosh(arg, "k(r′)")?)
}

/// `φ = σ − σ_p` and its smallest eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub phi: Matrix4<f64>,
    pub min_eigenvalue: f64,
}

impl Residual {
    pub fn is_valid(&self) -> bool {
        self.min_eigenvalue >= -RESIDUAL_TOL
    }
}

pub fn residual(sf: &StandardForm, dec: &SymplecticDecomposition) -> Residual {
    let phi = sf.expand().matrix() - dec.assemble_pure().matrix();
    let phi = (phi + phi.transpose()) * 0.5;
    let min_eigenvalue = SymmetricEigen::new(phi).eigenvalues.min();
    Residual { phi, min_eigenvalue }
}

/// `Σ⁻¹ σ Σ⁻ᵀ`: the state the preparation `Σ` must act on to produce `sf`.
pub fn classical_core(sf: &StandardForm, dec: &SymplecticDecomposition) -> Result<CovarianceMatrix> {
    let core = dec.transform().inverse().apply(&sf.expand());
    if core.matrix().iter().all(|x| x.is_finite()) {
        Ok(core)
    } else {
        Err(Error::SingularTransform)
    }
}
