use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use noonsim_core::coherent::{coherent_state, rotation_operator};
use noonsim_core::husimi::husimi_grid;
use noonsim_core::metrology::quantum_fisher_information;
use noonsim_core::schwinger::{make_noon, verify_schwinger_realization};
use noonsim_core::{su2, HalfInteger, KerrHamiltonian, NoonRoute, StereoLabel};
use num_complex::Complex64;

const SIZES: [u32; 3] = [10, 30, 60];

fn evolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolution");
    for twice in SIZES {
        let j = HalfInteger::from_twice(twice);
        let h = KerrHamiltonian::z(j, 0.0).unwrap().operator();
        let jx = su2::jx(j);
        group.bench_with_input(BenchmarkId::new("expm_diagonal", twice), &h, |b, h| {
            b.iter(|| h.exp_minus_i(black_box(1.3)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("expm_jx", twice), &jx, |b, jx| {
            b.iter(|| jx.exp_minus_i(black_box(1.3)).unwrap())
        });
    }
    group.finish();
}

fn coherent(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherent");
    let label = StereoLabel::Finite(Complex64::new(0.4, -1.1));
    for twice in SIZES {
        let j = HalfInteger::from_twice(twice);
        group.bench_with_input(BenchmarkId::new("expansion", twice), &j, |b, &j| {
            b.iter(|| coherent_state(j, black_box(&label)))
        });
        group.bench_with_input(BenchmarkId::new("rotation_operator", twice), &j, |b, &j| {
            b.iter(|| rotation_operator(j, black_box(&label)).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    for n in SIZES {
        group.bench_with_input(BenchmarkId::new("make_noon", n), &n, |b, &n| {
            b.iter(|| make_noon(n, 0.0, NoonRoute::LabelI).unwrap())
        });
        let t = make_noon(n, 0.0, NoonRoute::LabelI).unwrap();
        group.bench_with_input(BenchmarkId::new("qfi", n), &t, |b, t| {
            b.iter(|| quantum_fisher_information(black_box(t)))
        });
        let j = HalfInteger::from_twice(n);
        group.bench_with_input(BenchmarkId::new("schwinger_check", n), &j, |b, &j| {
            b.iter(|| verify_schwinger_realization(j))
        });
    }
    group.finish();
}

fn husimi(c: &mut Criterion) {
    let j = HalfInteger::from_twice(20);
    let state = coherent_state(j, &StereoLabel::Finite(Complex64::new(0.0, 1.0)));
    c.bench_function("husimi_46x90_2j20", |b| {
        b.iter(|| husimi_grid(black_box(&state), 46, 90).unwrap())
    });
}

criterion_group!(benches, evolution, coherent, pipeline, husimi);
criterion_main!(benches);
