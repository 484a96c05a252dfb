use criterion::{black_box, criterion_group, criterion_main, Criterion};

use alcove_bench::instances;
use alcove_core::closed;
use alcove_core::oracle::{circle_dp_count, dp_count};
use alcove_core::reflect::{count_alcove, count_circle};

fn bench_interval_family(c: &mut Criterion) {
    let (chamber, steps, eta, lambda) = instances::interval_family();
    let mut group = c.benchmark_group("interval_family_n3_m4_k10");
    group.bench_function("reflection", |b| {
        b.iter(|| count_alcove(&chamber, &steps, &eta, &lambda, black_box(10)).unwrap())
    });
    group.bench_function("dp", |b| {
        b.iter(|| dp_count(&chamber, &steps, &eta, &lambda, black_box(10)).unwrap())
    });
    group.bench_function("closed", |b| {
        b.iter(|| {
            closed::tcn_coord_expoly(&eta, &lambda, chamber.m2, chamber.n)
                .unwrap()
                .extract(black_box(10))
        })
    });
    group.finish();
}

fn bench_circle(c: &mut Criterion) {
    let (m, n, steps, eta, lambda) = instances::circle_instance();
    let mut group = c.benchmark_group("circle_n3_m5_k8");
    group.bench_function("reflection", |b| {
        b.iter(|| count_circle(m, n, &steps, &eta, &lambda, black_box(8)).unwrap())
    });
    group.bench_function("dp", |b| {
        b.iter(|| circle_dp_count(m, n, &steps, &eta, &lambda, black_box(8)).unwrap())
    });
    group.bench_function("closed", |b| {
        b.iter(|| {
            closed::circle_coord_expoly(m, n, &eta, &lambda)
                .unwrap()
                .extract(black_box(8))
        })
    });
    group.finish();
}

criterion_group!(benches, bench_interval_family, bench_circle);
criterion_main!(benches);
