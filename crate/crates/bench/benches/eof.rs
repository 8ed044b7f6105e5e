use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use gauss_eof_bench::{entangled_states, scrambled};
use gauss_eof_core::ensemble::{run_sweep, SweepConfig};
use gauss_eof_core::{eof_exact, eof_lower, eof_oracle, eof_upper, EofOptions, OracleGrid};
use std::hint::black_box;

fn bounds(c: &mut Criterion) {
    let states = entangled_states(64, 1);
    let mut g = c.benchmark_group("bounds");
    g.throughput(Throughput::Elements(states.len() as u64));
    g.bench_function("lower", |b| {
        b.iter(|| states.iter().map(|s| eof_lower(black_box(s)).unwrap()).sum::<f64>())
    });
    g.bench_function("upper", |b| {
        b.iter(|| states.iter().map(|s| eof_upper(black_box(s)).unwrap()).sum::<f64>())
    });
    g.finish();
}

fn exact(c: &mut Criterion) {
    let states = entangled_states(16, 2);
    let mut g = c.benchmark_group("exact");
    g.throughput(Throughput::Elements(states.len() as u64));
    for grid_points in [200, 2000, 20000] {
        let opts = EofOptions {
            grid_points,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(grid_points), &opts, |b, o| {
            b.iter(|| {
                states
                    .iter()
                    .map(|s| eof_exact(black_box(s), o).unwrap().exact)
                    .sum::<f64>()
            })
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let sf = entangled_states(1, 3)[0];
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for (n_eigen, n_angle) in [(30, 100), (120, 400)] {
        let grid = OracleGrid { n_eigen, n_angle };
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{n_eigen}x{n_angle}")),
            &grid,
            |b, grid| b.iter(|| eof_oracle(black_box(&sf), grid).unwrap()),
        );
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let matrices = scrambled(&entangled_states(64, 4), 4);
    let mut g = c.benchmark_group("gaussian");
    g.throughput(Throughput::Elements(matrices.len() as u64));
    g.bench_function("reduce_to_standard_form", |b| {
        b.iter(|| {
            matrices
                .iter()
                .map(|m| black_box(m).reduce_to_standard_form().unwrap().0.a())
                .sum::<f64>()
        })
    });
    g.bench_function("symplectic_spectrum", |b| {
        b.iter(|| {
            matrices
                .iter()
                .map(|m| black_box(m).symplectic_spectrum().unwrap().nu_minus)
                .sum::<f64>()
        })
    });
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let cfg = SweepConfig {
        n_states: 100,
        seed: 5,
        ..Default::default()
    };
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("100_states", |b| {
        b.iter(|| run_sweep(black_box(&cfg)).unwrap().1.mean_delta_plus)
    });
    g.finish();
}

criterion_group!(benches, bounds, exact, oracle, reduction, sweep);
criterion_main!(benches);
