//! Entanglement of formation: entropy of entanglement, the analytical lower and
//! upper bounds, and the exact value by minimisation over one squeezing parameter.

use serde::{Deserialize, Serialize};

use crate::decomp::{k_of, residual, LocalSqueezing, SymplecticDecomposition};
use crate::error::{Error, Result};
use crate::gaussian::StandardForm;
use crate::optimize::golden_section;

const MAX_REFINEMENT_ITERATIONS: usize = 200;

/// Entropy of entanglement of a two-mode squeezed vacuum, in ebits:
/// `cosh²r log₂ cosh²r − sinh²r log₂ sinh²r`.
///
/// Evaluated as `log₂(1 + x) + x log₂(1 + 1/x)` with `x = sinh² r`, which
/// avoids the cancellation between the two terms at large squeezing.
pub fn entropy_of_entanglement(r: f64) -> f64 {
    let x = r.sinh().powi(2);
    if x == 0.0 {
        return 0.0;
    }
    let tail = if x < 1.0 {
        x * (x.ln_1p() - x.ln())
    } else {
        x * (1.0 / x).ln_1p()
    };
    (x.ln_1p() + tail) / std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EofOptions {
    pub grid_points: usize,
    pub tol_r: f64,
}

impl Default for EofOptions {
    fn default() -> Self {
        Self {
            grid_points: 2000,
            tol_r: 1e-10,
        }
    }
}

/// Bounds, exact value (all in ebits) and the squeezing parameters they come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EofResult {
    pub lower: f64,
    pub upper: f64,
    pub exact: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub r_opt: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl EofResult {
    fn separable() -> Self {
        Self {
            lower: 0.0,
            upper: 0.0,
            exact: 0.0,
            r_minus: 0.0,
            r_plus: 0.0,
            r_opt: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

/// `(r₋, r₊)` with `r₊ = k(r₋, r′₁(r₋), r′₂(r₋))`.
pub fn squeezing_interval(sf: &StandardForm) -> Result<(f64, f64)> {
    let ls = LocalSqueezing::new(sf)?;
    interval(&ls)
}

fn interval(ls: &LocalSqueezing) -> Result<(f64, f64)> {
    let (r1, r2, _) = ls.eval(ls.r_minus)?;
    Ok((ls.r_minus, k_of(ls.r_minus, r1, r2)?))
}

/// `H(r₋)`; zero for separable states.
pub fn eof_lower(sf: &StandardForm) -> Result<f64> {
    if sf.is_separable() {
        return Ok(0.0);
    }
    let (r_minus, _) = crate::decomp::r_lower(sf)?;
    Ok(entropy_of_entanglement(r_minus))
}

/// `H(k(r₋))`; zero for separable states.
pub fn eof_upper(sf: &StandardForm) -> Result<f64> {
    if sf.is_separable() {
        return Ok(0.0);
    }
    let (_, r_plus) = squeezing_interval(sf)?;
    Ok(entropy_of_entanglement(r_plus))
}

/// Exact entanglement of formation, `min H(k(r′))` over `r′ ∈ [r₋, r₊]`.
///
/// The objective is not smooth, so a uniform grid locates the best bracketing
/// triple and golden-section search refines inside it. Points where the local
/// squeezing formulas leave their domain count as `+∞`.
pub fn eof_exact(sf: &StandardForm, opts: &EofOptions) -> Result<EofResult> {
    if sf.is_separable() {
        return Ok(EofResult::separable());
    }
    let ls = LocalSqueezing::new(sf)?;
    let (r_minus, r_plus) = interval(&ls)?;
    let lower = entropy_of_entanglement(r_minus);
    let upper = entropy_of_entanglement(r_plus);

    if r_plus - r_minus <= opts.tol_r {
        return Ok(EofResult {
            lower,
            upper,
            exact: lower,
            r_minus,
            r_plus,
            r_opt: r_minus,
            evaluations: 1,
            converged: true,
        });
    }

    let objective = |r: f64| -> f64 {
        ls.eval(r)
            .and_then(|(r1, r2, _)| k_of(r, r1, r2))
            .unwrap_or(f64::INFINITY)
    };

    let n = opts.grid_points.max(3);
    let step = (r_plus - r_minus) / (n - 1) as f64;
    let node = |i: usize| if i == n - 1 { r_plus } else { r_minus + step * i as f64 };
    let (mut best_i, mut best_k) = (0, r_plus);
    for i in 1..n {
        let k = objective(node(i));
        if k < best_k {
            best_i = i;
            best_k = k;
        }
    }
    let mut evaluations = n;

    let lo = node(best_i.saturating_sub(1));
    let hi = node((best_i + 1).min(n - 1));
    let refined = golden_section(objective, lo, hi, opts.tol_r, MAX_REFINEMENT_ITERATIONS)?;
    evaluations += refined.evaluations;
    let (r_opt, k_opt) = if refined.fx < best_k {
        (refined.x, refined.fx)
    } else {
        (node(best_i), best_k)
    };

    let (r1, r2, _) = ls.eval(r_opt)?;
    let check = residual(sf, &SymplecticDecomposition::reverse(r_opt, r1, r2));
    if !check.is_valid() {
        return Err(Error::NumericalDomain(format!(
            "decomposition at r′ = {r_opt} leaves a residual with eigenvalue {:e}",
            check.min_eigenvalue
        )));
    }

    Ok(EofResult {
        lower,
        upper,
        exact: entropy_of_entanglement(k_opt),
        r_minus,
        r_plus,
        r_opt,
        evaluations,
        converged: true,
    })
}

/// Outcome of testing whether the upper bound is tight for a `ν₋ = 1` state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    /// `|r′₁ − r′₂| ≤ ½ ln ν₊` at `r′ = r₋`.
    pub applicable: bool,
    /// `|upper − exact| ≤ 1e-6`.
    pub tight: bool,
    pub gap: f64,
    pub local_squeezing_gap: f64,
    pub half_log_nu_plus: f64,
}

/// Diagnostic for states with `ν₋ = 1`: whether the local squeezers at `r₋`
/// satisfy `|r′₁ − r′₂| ≤ ½ ln ν₊` and whether the upper bound is then tight.
/// Never fails on a loose bound; it only reports the gap.
pub fn conjecture_check(sf: &StandardForm) -> Result<ConjectureReport> {
    let spec = sf.expand().symplectic_spectrum()?;
    if (spec.nu_minus - 1.0).abs() > 1e-6 {
        return Err(Error::NotApplicable(format!("ν₋ = {} is not 1", spec.nu_minus)));
    }
    if sf.is_separable() {
        return Err(Error::NotApplicable("state is separable".into()));
    }
    let ls = LocalSqueezing::new(sf)?;
    let (r1, r2, _) = ls.eval(ls.r_minus)?;
    let local_squeezing_gap = (r1 - r2).abs();
    let half_log_nu_plus = 0.5 * spec.nu_plus.ln();
    let result = eof_exact(sf, &EofOptions::default())?;
    let gap = (result.upper - result.exact).abs();
    Ok(ConjectureReport {
        applicable: local_squeezing_gap <= half_log_nu_plus,
        tight: gap <= 1e-6,
        gap,
        local_squeezing_gap,
        half_log_nu_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::PurityParams;

    // Reference values from a 30-digit evaluation of cosh²r log₂cosh²r − sinh²r log₂sinh²r.
    const H_REFERENCE: [(f64, f64); 4] = [
        (0.1, 0.081_159_564_840_505_21),
        (0.5, 0.951_389_513_891_278_6),
        (1.0, 2.336_909_300_545_897),
        (2.0, 5.213_636_533_280_36),
    ];

    #[test]
    fn entropy_reference_values() {
        assert_eq!(entropy_of_entanglement(0.0), 0.0);
        for (r, h) in H_REFERENCE {
            assert!((entropy_of_entanglement(r) - h).abs() < 1e-12, "H({r})");
        }
        assert!((entropy_of_entanglement(1.0) - 2.33691).abs() < 1e-5);
    }

    #[test]
    fn entropy_is_even_and_increasing() {
        let mut prev = 0.0;
        for i in 1..200 {
            let r = i as f64 * 0.05;
            let h = entropy_of_entanglement(r);
            assert_eq!(h, entropy_of_entanglement(-r));
            assert!(h > prev);
            prev = h;
        }
        // small-squeezing branch stays accurate: H ≈ x(log₂ e − log₂ x) for x = sinh² r → 0
        let r = 1e-8f64;
        let x = r.sinh().powi(2);
        let approx = x * (1.0 - x.ln()) / std::f64::consts::LN_2;
        assert!((entropy_of_entanglement(r) / approx - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tmsv_bounds_and_exact_coincide() {
        let r = 0.5;
        let sf = StandardForm::tmsv(r);
        let res = eof_exact(&sf, &EofOptions::default()).unwrap();
        let h = entropy_of_entanglement(r);
        assert!((res.exact - h).abs() < 1e-9);
        assert!((res.lower - h).abs() < 1e-9 && (res.upper - h).abs() < 1e-9);
        assert!((res.r_opt - r).abs() < 1e-9);
        assert!((eof_lower(&sf).unwrap() - h).abs() < 1e-9);
        assert!((eof_upper(&sf).unwrap() - h).abs() < 1e-9);
    }

    #[test]
    fn separable_state_short_circuits() {
        let sf = StandardForm::new(3.0, 2.0, 0.4, -0.3).unwrap();
        assert!(sf.is_separable());
        let res = eof_exact(&sf, &EofOptions::default()).unwrap();
        assert_eq!(res, EofResult::separable());
        assert_eq!(eof_lower(&sf).unwrap(), 0.0);
        assert_eq!(eof_upper(&sf).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_state_needs_no_refinement() {
        let sf = StandardForm::from_purity_params(&PurityParams::from_sdg(2.5, 0.0, 2.0, -0.2)).unwrap();
        let res = eof_exact(&sf, &EofOptions::default()).unwrap();
        assert!((res.upper - res.lower).abs() < 1e-8);
        assert!((res.exact - res.lower).abs() < 1e-8);
    }

    #[test]
    fn gmems_upper_equals_lower() {
        let sf = StandardForm::from_purity_params(&PurityParams::from_sdg(3.0, 0.8, 2.8, 1.0)).unwrap();
        assert!((eof_upper(&sf).unwrap() - eof_lower(&sf).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn asymmetric_state_is_sandwiched() {
        let sf = StandardForm::from_purity_params(&PurityParams::from_sdg(3.0, 1.2, 4.0, -0.4)).unwrap();
        let res = eof_exact(&sf, &EofOptions::default()).unwrap();
        assert!(res.lower <= res.exact + 1e-9 && res.exact <= res.upper + 1e-9);
        assert!(res.r_minus <= res.r_opt && res.r_opt <= res.r_plus + 1e-9);
        assert!(res.upper - res.lower > 1e-6, "fixture should have a visible gap");
        assert!(res.converged);
    }

    #[test]
    fn conjecture_check_rejects_states_outside_the_family() {
        let sf = StandardForm::from_purity_params(&PurityParams::from_sdg(3.0, 1.2, 4.0, 0.5)).unwrap();
        assert!(matches!(conjecture_check(&sf), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn conjecture_check_reports_on_glems() {
        let sf = StandardForm::from_purity_params(&PurityParams::from_sdg(3.0, 0.6, 2.3, -1.0)).unwrap();
        assert!(!sf.is_separable());
        let rep = conjecture_check(&sf).unwrap();
        assert!(rep.gap >= 0.0);
        assert!(rep.half_log_nu_plus > 0.0);
    }
}
