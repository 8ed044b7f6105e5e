#![allow(dead_code)]

use gauss_eof_core::ensemble::{record_rng, sample_entangled, SweepConfig};
use gauss_eof_core::{PurityParams, StandardForm, SymplecticMatrix};
use nalgebra::Matrix2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    record_rng(seed, stream)
}

/// Entangled states from the default sweep sampler.
pub fn entangled_states(n: usize, seed: u64) -> Vec<StandardForm> {
    let cfg = SweepConfig::default();
    (0..n as u64)
        .map(|i| sample_entangled(&mut rng(seed, i), &cfg).unwrap().sf)
        .collect()
}

/// Entangled states drawn with `d` and/or `β` pinned.
pub fn entangled_family(n: usize, seed: u64, d_fixed: Option<f64>, beta_fixed: Option<f64>) -> Vec<StandardForm> {
    let mut out = Vec::with_capacity(n);
    let mut r = rng(seed, 0);
    while out.len() < n {
        let s = r.random_range(1.0..=5.0);
        let d = d_fixed.unwrap_or_else(|| r.random_range(-(s - 1.0)..=(s - 1.0)));
        let g_lo = 2.0 * f64::abs(d) + 1.0;
        let g_hi = s * s - d * d;
        if g_hi < g_lo {
            continue;
        }
        let g = r.random_range(g_lo..=g_hi);
        let beta = beta_fixed.unwrap_or_else(|| r.random_range(-1.0..=1.0));
        let Ok(sf) = StandardForm::from_purity_params(&PurityParams::from_sdg(s, d, g, beta)) else {
            continue;
        };
        if !sf.is_separable() {
            out.push(sf);
        }
    }
    out
}

pub fn rotation(t: f64) -> Matrix2<f64> {
    let (s, c) = t.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// Single-mode `R(θ₂) diag(e^r, e^{−r}) R(θ₁)`.
pub fn random_single_mode<R: Rng>(r: &mut R, max_squeeze: f64) -> Matrix2<f64> {
    let sq = r.random_range(-max_squeeze..=max_squeeze);
    let t1 = r.random_range(0.0..std::f64::consts::TAU);
    let t2 = r.random_range(0.0..std::f64::consts::TAU);
    rotation(t2) * Matrix2::new(sq.exp(), 0.0, 0.0, (-sq).exp()) * rotation(t1)
}

pub fn random_local<R: Rng>(r: &mut R, max_squeeze: f64) -> SymplecticMatrix {
    SymplecticMatrix::local(random_single_mode(r, max_squeeze), random_single_mode(r, max_squeeze)).unwrap()
}
