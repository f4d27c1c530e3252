use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fmcurves::{diagonal_kernel, fm, kunneth};
use fmcurves_bench::{class_pair, kernel_pair};

fn cup(c: &mut Criterion) {
    let mut group = c.benchmark_group("cup");
    for g in 1..=3 {
        let (x, y) = class_pair(3, g);
        group.bench_with_input(BenchmarkId::new("threefold", g), &g, |b, _| {
            b.iter(|| kunneth::cup(black_box(&x), black_box(&y)).unwrap())
        });
    }
    group.finish();
}

fn convolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolve");
    for g in 0..=3 {
        let (e1, e2) = kernel_pair(g);
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, _| {
            b.iter(|| fm::convolve(black_box(&e1), black_box(&e2)).unwrap())
        });
    }
    group.finish();
}

fn diagonal(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagonal_kernel");
    for g in [0, 2, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, &g| b.iter(|| diagonal_kernel(black_box(g))));
    }
    group.finish();
}

fn torelli(c: &mut Criterion) {
    let mut group = c.benchmark_group("torelli_report");
    for g in 1..=3 {
        let e = diagonal_kernel(g);
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, _| b.iter(|| fm::torelli_report(black_box(&e))));
    }
    group.finish();
}

criterion_group!(benches, cup, convolve, diagonal, torelli);
criterion_main!(benches);
