use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadlcm_core::congruence::{solve, solve_brute};
use quadlcm_core::oracle::{empirical_smallest_period, Window};
use quadlcm_core::period::smallest_period;
use quadlcm_core::QuadPoly;

fn poly(a: i64, b: i64, c: i64) -> QuadPoly {
    QuadPoly::new(a, b, c).unwrap()
}

fn closed_form_period(c: &mut Criterion) {
    let mut group = c.benchmark_group("smallest_period");
    let f = poly(1, 0, 1);
    for k in [1u64, 10, 100, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| smallest_period(black_box(&f), k).unwrap())
        });
    }
    group.finish();
}

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("roots_mod_prime_power");
    let f = poly(3, -1, -7);
    for (p, e) in [(2u64, 12u32), (3, 8), (13, 3)] {
        let id = format!("{p}^{e}");
        group.bench_function(BenchmarkId::new("closed_form", &id), |b| {
            b.iter(|| solve(black_box(&f), p, e).unwrap())
        });
        group.bench_function(BenchmarkId::new("scan", &id), |b| {
            b.iter(|| solve_brute(black_box(&f), p, e, u64::MAX).unwrap())
        });
    }
    group.finish();
}

fn empirical_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("empirical_period");
    group.sample_size(10);
    let window = Window::default();
    for (f, k) in [(poly(1, 0, 1), 2u64), (poly(2, 3, -5), 3), (poly(1, 1, 1), 4)] {
        group.bench_function(BenchmarkId::new(f.to_string(), k), |b| {
            b.iter(|| empirical_smallest_period(black_box(&f), k, &window).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_form_period, roots, empirical_scan);
criterion_main!(benches);
