use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use treecut::io::Shape;
use treecut::suite::{clustered_instance, default_suite, run_suite};
use treecut::{gen_random, par, solve_k, solve_leaves};

fn suite(c: &mut Criterion) {
    let cases = default_suite(1).unwrap();
    let mut group = c.benchmark_group("default_suite");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    group.bench_function("parallel", |b| b.iter(|| run_suite(black_box(&cases), true).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| run_suite(black_box(&cases), false).unwrap()));
    group.finish();
}

fn leaves(c: &mut Criterion) {
    let inst = gen_random(300, 40, 100, 5, Shape::Leaves(8)).unwrap();
    let mut group = c.benchmark_group("solve_leaves_n300_l8");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| solve_leaves(black_box(&inst.tree), &inst.pairs, &inst.weights).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| solve_leaves(black_box(&inst.tree), &inst.pairs, &inst.weights).unwrap()))
    });
    group.finish();
}

fn size_budget(c: &mut Criterion) {
    let inst = clustered_instance(200, 4, 30, 9).unwrap().with_budgets(Some(0), Some(4));
    let mut group = c.benchmark_group("solve_k_n200_k4");
    group.sample_size(20);
    group.bench_function("parallel", |b| b.iter(|| solve_k(black_box(&inst)).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| par::sequential(|| solve_k(black_box(&inst)).unwrap())));
    group.finish();
}

criterion_group!(benches, suite, leaves, size_budget);
criterion_main!(benches);
