//! Golden-section search for one-dimensional minimisation on a bracket.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenOutcome {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Shrinks `[lo, hi]` by the golden ratio until it is narrower than `tol`.
///
/// Only unimodality inside the bracket is assumed, not smoothness. The best
/// point seen (including the two end points) is returned; ties go to the
/// smaller abscissa.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<GoldenOutcome>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = (a, f(a));
    let fb = f(b);
    if fb < best.1 {
        best = (b, fb);
    }
    let mut evaluations = 2;
    let consider = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx < best.1 || (fx == best.1 && x < best.0) {
            *best = (x, fx);
        }
    };

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    evaluations += 2;
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);

    let mut iterations = 0;
    while b - a > tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                width: b - a,
                iterations,
            });
        }
        iterations += 1;
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
        evaluations += 1;
    }
    Ok(GoldenOutcome {
        x: best.0,
        fx: best.1,
        iterations,
        evaluations,
    })
}
