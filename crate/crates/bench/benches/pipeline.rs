use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use simons_bench::{fixture, DEGREES};
use simons_core::identities::pointwise_residuals;
use simons_core::{build_rule, check_suite, geometry_jet, Precision, SurfaceIntegrator};

fn jets(c: &mut Criterion) {
    let mut group = c.benchmark_group("geometry_jet");
    for s in DEGREES {
        let (imm, pts) = fixture(s, 1);
        group.bench_with_input(BenchmarkId::from_parameter(s), &pts[0], |b, p| {
            b.iter(|| geometry_jet(black_box(&imm), black_box(p)).unwrap())
        });
    }
    group.finish();

    let (imm, pts) = fixture(3, 1);
    let gj = geometry_jet(&imm, &pts[0]).unwrap();
    c.bench_function("pointwise_residuals/3", |b| b.iter(|| pointwise_residuals(black_box(&gj))));
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_suite_50");
    group.sample_size(10);
    for s in DEGREES {
        let (imm, _) = fixture(s, 0);
        group.bench_function(BenchmarkId::from_parameter(s), |b| {
            b.iter(|| check_suite(&imm, 50, 42, 1e-8).unwrap())
        });
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadrature");
    group.sample_size(10);
    let (imm, _) = fixture(3, 0);
    for n in [8usize, 16, 24] {
        group.bench_with_input(BenchmarkId::new("build_rule", n), &n, |b, &n| {
            b.iter(|| build_rule(&imm, n).unwrap())
        });
    }
    let rule = build_rule(&imm, 16).unwrap();
    group.bench_function("integrator/16", |b| {
        b.iter(|| SurfaceIntegrator::new(&imm, &rule, Precision::Double).unwrap().identity(3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, jets, suites, quadrature);
criterion_main!(benches);
