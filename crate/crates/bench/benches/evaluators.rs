use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qbarnes_bench::{c, continued_points, convergent_points, near_one};
use qbarnes_core::classical::{barnes_zeta, hurwitz_em, EMConfig};
use qbarnes_core::limits::{dyadic_grid, limit_sweep, sweep_policy};
use qbarnes_core::qgamma::{gauss_legendre_check, qgamma};
use qbarnes_core::qnum::q_binomial_exact;
use qbarnes_core::qzeta::{
    qzeta1_em, qzeta_binomial_ac, qzeta_direct, qzeta_qbinom, qzeta_reduce,
};
use qbarnes_core::{ContinuationParams, QGammaContext, SweepSpec, TRule, TruncationPolicy, Weights};

fn classical(cr: &mut Criterion) {
    let cfg = EMConfig::default();
    let mut g = cr.benchmark_group("classical");
    g.bench_function("hurwitz_em s=-0.5+3i", |b| {
        b.iter(|| hurwitz_em(black_box(c(-0.5, 3.0)), black_box(c(0.7, 0.0)), &cfg))
    });
    for r in [1usize, 2, 4] {
        g.bench_with_input(BenchmarkId::new("barnes_zeta", r), &r, |b, &r| {
            b.iter(|| barnes_zeta(r, black_box(c(0.5, 1.0)), black_box(c(1.3, 0.0)), &[cfg]))
        });
    }
    g.finish();
}

fn gaussian_binomials(cr: &mut Criterion) {
    cr.bench_function("q_binomial_exact 30 choose 12", |b| {
        b.iter(|| q_binomial_exact(black_box(30), black_box(12)))
    });
}

fn qzeta_routes(cr: &mut Criterion) {
    let policy = TruncationPolicy::default();
    let one = Weights::ones(1);
    let mut g = cr.benchmark_group("qzeta routes");
    for p in convergent_points() {
        let w = Weights::ones(p.r);
        g.bench_function(BenchmarkId::new("direct", p.label), |b| {
            b.iter(|| qzeta_direct(p.r, p.q, black_box(p.s), p.t, p.z, &w, &policy))
        });
        g.bench_function(BenchmarkId::new("qbinom", p.label), |b| {
            b.iter(|| qzeta_qbinom(p.r, p.q, black_box(p.s), p.t, p.z, &policy))
        });
        g.bench_function(BenchmarkId::new("reduce", p.label), |b| {
            b.iter(|| {
                qzeta_reduce(p.r, p.q, black_box(p.s), p.t, p.z, |s, t, z| {
                    qzeta_binomial_ac(1, p.q, s, t, z, &one, &policy)
                })
            })
        });
        g.bench_function(BenchmarkId::new("binomial", p.label), |b| {
            b.iter(|| qzeta_binomial_ac(p.r, p.q, black_box(p.s), p.t, p.z, &w, &policy))
        });
    }
    for p in continued_points() {
        let w = Weights::ones(p.r);
        g.bench_function(BenchmarkId::new("binomial", p.label), |b| {
            b.iter(|| qzeta_binomial_ac(p.r, p.q, black_box(p.s), p.t, p.z, &w, &policy))
        });
    }
    g.finish();
}

fn em_continuation(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("qzeta1_em");
    g.sample_size(20);
    for (n, m) in [(1usize, 4usize), (2, 4), (2, 6)] {
        let cp = ContinuationParams::new(n, m, 50).unwrap();
        for q in near_one() {
            let id = BenchmarkId::new(format!("N={n} M={m}"), q.value());
            g.bench_function(id, |b| {
                b.iter(|| qzeta1_em(q, black_box(c(2.0, 0.0)), c(-0.5, 0.0), c(1.0, 0.0), &cp))
            });
        }
    }
    g.finish();
}

fn q_gamma(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("qgamma");
    for q in near_one() {
        let ctx = QGammaContext::new(q).unwrap();
        g.bench_with_input(BenchmarkId::new("right half", q.value()), &ctx, |b, ctx| {
            b.iter(|| qgamma(ctx, black_box(c(2.5, 0.5))))
        });
        g.bench_with_input(BenchmarkId::new("ladder", q.value()), &ctx, |b, ctx| {
            b.iter(|| qgamma(ctx, black_box(c(-3.5, 0.5))))
        });
    }
    let q = near_one()[0];
    g.bench_function("gauss_legendre N=3", |b| {
        b.iter(|| gauss_legendre_check(q, 3, black_box(c(0.7, 0.2))))
    });
    g.finish();
}

fn sweeps(cr: &mut Criterion) {
    let policy = sweep_policy();
    let mut g = cr.benchmark_group("limit_sweep");
    g.sample_size(10);
    for r in [1usize, 2] {
        let spec = SweepSpec::new(r, c(3.5, 0.0), c(1.0, 0.0), TRule::Shift(1))
            .with_grid(dyadic_grid(3, 9));
        g.bench_with_input(BenchmarkId::new("k=3..9", r), &spec, |b, spec| {
            b.iter(|| limit_sweep(spec, &policy))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    classical,
    gaussian_binomials,
    qzeta_routes,
    em_continuation,
    q_gamma,
    sweeps
);
criterion_main!(benches);
