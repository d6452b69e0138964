use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fano4::catalog::search_d1;
use fano4::chow::{chern_numbers, chi_divisor, lefschetz_defect, DivisorClass};
use fano4_bench::{bundle_fan, k4_fan};

fn bench_chern_numbers(c: &mut Criterion) {
    let fan = k4_fan();
    c.bench_function("chern_numbers/P2xS4", |b| {
        b.iter(|| chern_numbers(black_box(&fan)).unwrap())
    });
}

fn bench_chi_divisor(c: &mut Criterion) {
    let fan = bundle_fan();
    let mk = DivisorClass::anticanonical(&fan);
    c.bench_function("chi_divisor/anticanonical on P(O^2+O(2))", |b| {
        b.iter(|| chi_divisor(black_box(&fan), black_box(&mk)).unwrap())
    });
}

fn bench_lefschetz(c: &mut Criterion) {
    let fan = k4_fan();
    c.bench_function("lefschetz_defect/P2xS4", |b| {
        b.iter(|| lefschetz_defect(black_box(&fan)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    c.bench_function("search_d1/max_degree=3", |b| {
        b.iter(|| search_d1(black_box(3)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_chern_numbers,
    bench_chi_divisor,
    bench_lefschetz,
    bench_search
);
criterion_main!(benches);
