use std::hint::black_box;

use bstar_bench::quadratic_set;
use bstar_core::moments::{m_k, s_k_bruteforce, s_k_fast, s_star_k_with, StarMethod};
use bstar_core::search::{greedy_weak_sidon, max_bstar_exact, DEFAULT_BUDGET};
use bstar_core::{is_b_star_k, IntegerSet, Limits};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn representation(c: &mut Criterion) {
    let lim = Limits::default();
    let a = quadratic_set(12);
    let mut g = c.benchmark_group("s_k");
    for k in [2usize, 3, 4] {
        g.bench_with_input(BenchmarkId::new("newton", k), &k, |b, &k| {
            b.iter(|| s_k_fast(black_box(&a), k).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("enumeration", k), &k, |b, &k| {
            b.iter(|| s_k_bruteforce(black_box(&a), k, &lim).unwrap())
        });
    }
    g.finish();

    let interval = IntegerSet::interval(256);
    c.bench_function("m_2 interval 256", |b| {
        b.iter(|| m_k(black_box(&interval), 2).unwrap())
    });
}

fn star_counts(c: &mut Criterion) {
    let lim = Limits::default();
    let a = quadratic_set(14);
    let mut g = c.benchmark_group("s_star_3");
    g.bench_function("subsets", |b| {
        b.iter(|| s_star_k_with(black_box(&a), 3, StarMethod::Subsets, &lim).unwrap())
    });
    g.bench_function("sum_groups", |b| {
        b.iter(|| s_star_k_with(black_box(&a), 3, StarMethod::SumGroups, &lim).unwrap())
    });
    g.finish();

    let big = quadratic_set(200);
    c.bench_function("weak B_2 test, 200 elements", |b| {
        b.iter(|| is_b_star_k(black_box(&big), 2, &lim).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let lim = Limits::default();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("exact N=26 k=2", |b| {
        b.iter(|| max_bstar_exact(black_box(26), 2, DEFAULT_BUDGET, &lim).unwrap())
    });
    g.bench_function("greedy weak Sidon 300", |b| {
        b.iter(|| greedy_weak_sidon(black_box(1 << 22), 300))
    });
    g.finish();
}

criterion_group!(benches, representation, star_counts, search);
criterion_main!(benches);
