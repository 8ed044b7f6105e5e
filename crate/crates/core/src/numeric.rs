//! Small scalar helpers shared by the formula modules.

use crate::error::{Error, Result};

/// Radicands and `acosh` arguments within this distance of their boundary are clamped.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Square root that tolerates a radicand slightly below zero.
///
/// `scale` sets the magnitude the tolerance is measured against; values
/// below `-BOUNDARY_TOL * scale` are a genuine domain error.
pub fn clamped_sqrt(x: f64, scale: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -BOUNDARY_TOL * scale.abs().max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::NumericalDomain(format!("negative radicand {x:e} in {what}")))
    }
}

pub fn clamped_acosh(x: f64, what: &str) -> Result<f64> {
    if x >= 1.0 {
        Ok(x.acosh())
    } else if x >= 1.0 - BOUNDARY_TOL {
        Ok(0.0)
    } else {
        Err(Error::NumericalDomain(format!("acosh argument {x} below 1 in {what}")))
    }
}

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros trimmed.
pub fn fmt_sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_matches_printf_g() {
        assert_eq!(fmt_sig12(1.0), "1");
        assert_eq!(fmt_sig12(0.1), "0.1");
        assert_eq!(fmt_sig12(-2.5), "-2.5");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(123456.789), "123456.789");
        assert_eq!(fmt_sig12(1.234e-7), "1.234e-07");
        assert_eq!(fmt_sig12(6.02214076e23), "6.02214076e+23");
        assert_eq!(fmt_sig12(2.0f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_sig12(0.0001), "0.0001");
    }

    #[test]
    fn clamps_only_near_boundary() {
        assert_eq!(clamped_sqrt(-1e-14, 1.0, "t").unwrap(), 0.0);
        assert!(clamped_sqrt(-1e-6, 1.0, "t").is_err());
        assert_eq!(clamped_acosh(1.0 - 1e-13, "t").unwrap(), 0.0);
        assert!(clamped_acosh(0.5, "t").is_err());
    }
}
