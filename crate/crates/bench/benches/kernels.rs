use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gbquad::{gl_rule, BernsteinBasis, BooleanSumMatrix, BuiltinFunction, OscillatoryKernel, ProductRule};

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis_eval_all");
    for m in [16usize, 128, 512] {
        let b = BernsteinBasis::new(m, 1.0).unwrap();
        let mut out = vec![0.0; m + 1];
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |bench, _| {
            bench.iter(|| b.eval_all_into(black_box(0.3), &mut out))
        });
    }
    g.finish();
}

fn boolean_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("boolean_sum_build");
    g.sample_size(10);
    for (m, ell) in [(32usize, 256usize), (128, 256), (128, 100)] {
        g.bench_function(format!("m{m}_l{ell}"), |bench| {
            bench.iter(|| BooleanSumMatrix::new(black_box(m), 1.0, ell).unwrap())
        });
    }
    g.finish();
}

fn rule(c: &mut Criterion) {
    let mut g = c.benchmark_group("product_rule");
    g.sample_size(10);
    for (m, omega) in [(32usize, 10.0), (32, 1000.0), (128, 100.0)] {
        let k = OscillatoryKernel::sin(omega).unwrap();
        let rule = ProductRule::new(m, 1.0, 256, k).unwrap();
        let fs = BuiltinFunction::F1.samples(m).unwrap();
        g.bench_function(format!("moments_m{m}_w{omega}"), |bench| {
            bench.iter(|| rule.moments(black_box(-0.7)).unwrap())
        });
        g.bench_function(format!("integrate_m{m}_w{omega}"), |bench| {
            bench.iter(|| rule.integrate(&fs, black_box(-0.7)).unwrap())
        });
    }
    g.finish();
}

fn gauss(c: &mut Criterion) {
    let mut g = c.benchmark_group("gl_rule");
    for n in [8usize, 64, 512] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| gl_rule(black_box(n)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, basis, boolean_sum, rule, gauss);
criterion_main!(benches);
