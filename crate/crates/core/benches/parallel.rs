//! Sequential vs rayon executors on the three data-parallel workloads.

use std::f64::consts::FRAC_PI_3;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bell_wigner::data_inequality::data_bell_margin_3_with;
use bell_wigner::sampler::sample_dataset;
use bell_wigner::sweep::{grid_sweep, SweepKind};
use bell_wigner::{AngleConfig, AngleConvention, Executor, TheoryMode};

fn executors() -> [(&'static str, Executor); 2] {
    [("sequential", Executor::sequential()), ("parallel", Executor::all_cores())]
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid_sweep_wigner_60");
    group.sample_size(10);
    for (name, exec) in executors() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, exec| {
            b.iter(|| grid_sweep(black_box(60), AngleConvention::Spin, SweepKind::Wigner, TheoryMode::Paper, exec))
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let cfg = AngleConfig::spin(0.0, FRAC_PI_3, 2.0 * FRAC_PI_3);
    let mut group = c.benchmark_group("sample_dataset_1e6");
    group.sample_size(10);
    for (name, exec) in executors() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, exec| {
            b.iter(|| sample_dataset(&cfg, black_box(1_000_000), 42, exec))
        });
    }
    group.finish();
}

fn exact_margin(c: &mut Criterion) {
    let cfg = AngleConfig::spin(0.0, FRAC_PI_3, 2.0 * FRAC_PI_3);
    let data = sample_dataset(&cfg, 4_000_000, 7, &Executor::all_cores()).unwrap();
    let mut group = c.benchmark_group("data_bell_margin_3_4e6");
    for (name, exec) in executors() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, exec| {
            b.iter(|| data_bell_margin_3_with(black_box(&data), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, sampling, exact_margin);
criterion_main!(benches);
