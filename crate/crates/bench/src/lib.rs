//! Shared fixtures for the benchmarks.

use gauss_eof_core::ensemble::{record_rng, sample_entangled, SweepConfig};
use gauss_eof_core::{CovarianceMatrix, StandardForm, SymplecticMatrix};
use rand::Rng;

/// `n` entangled standard forms from the sweep sampler, reproducible per seed.
pub fn entangled_states(n: usize, seed: u64) -> Vec<StandardForm> {
    let cfg = SweepConfig::default();
    (0..n as u64)
        .map(|i| {
            sample_entangled(&mut record_rng(seed, i), &cfg)
                .expect("sampler accepts")
                .sf
        })
        .collect()
}

/// The same states hidden behind random local rotations and squeezers.
pub fn scrambled(states: &[StandardForm], seed: u64) -> Vec<CovarianceMatrix> {
    let mut rng = record_rng(seed, u64::MAX);
    states
        .iter()
        .map(|sf| {
            let l = SymplecticMatrix::local_rotation(rng.random_range(0.0..6.3), rng.random_range(0.0..6.3))
                * SymplecticMatrix::local_squeezer(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7));
            l.apply(&sf.expand())
        })
        .collect()
}
