//! Compares the rayon-parallel execution of restarts, partition sweeps, and
//! Monte Carlo sampling against the forced-sequential path. Run with
//! `cargo bench -p gme-core`; build with `--no-default-features` to measure
//! the crate compiled without rayon at all.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gme_core::{
    best_rank_one, best_rank_one_sequential, mc_search, states, OptimizerConfig, SearchConfig,
};

fn bench_restarts(c: &mut Criterion) {
    let dicke = states::dicke_state(6, 3).unwrap();
    let qudit = states::qudit_symmetric_state(4, 10, None).unwrap();
    let cfg = OptimizerConfig {
        restarts: 20,
        max_iterations: 500,
        tolerance: 1e-10,
        seed: 7,
    };
    let mut g = c.benchmark_group("best_rank_one");
    g.bench_function("dicke_6_3/parallel", |b| {
        b.iter(|| best_rank_one(black_box(&dicke), &cfg).unwrap())
    });
    g.bench_function("dicke_6_3/sequential", |b| {
        b.iter(|| best_rank_one_sequential(black_box(&dicke), &cfg).unwrap())
    });
    g.bench_function("qudit_4_10/parallel", |b| {
        b.iter(|| best_rank_one(black_box(&qudit), &cfg).unwrap())
    });
    g.bench_function("qudit_4_10/sequential", |b| {
        b.iter(|| best_rank_one_sequential(black_box(&qudit), &cfg).unwrap())
    });
    g.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut cfg = SearchConfig::new(4, 4, 64, 3);
    cfg.optimizer.restarts = 4;
    let mut g = c.benchmark_group("mc_search");
    g.sample_size(10);
    g.bench_function("4q_64samples", |b| {
        b.iter(|| mc_search(black_box(&cfg)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_restarts, bench_search);
criterion_main!(benches);
