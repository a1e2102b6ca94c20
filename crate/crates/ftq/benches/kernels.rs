//! Criterion benches for the hot kernels: the radix-p transform against the
//! quadratic direct sum, the convolution-based three-term counter against
//! the cubic triple loop, and the multiplier analysis across rayon pool
//! sizes (1 thread approximates the sequential build; the library gives
//! identical results either way).

use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ftq::combinat::count_solutions_three;
use ftq::ergodic::MultiplierAnalysis;
use ftq::ffield::first_irreducible;
use ftq::naive;
use ftq::quotient::{fourier_transform, ResidueCtx};
use ftq::text::{parse_poly, parse_ypoly};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(p: u64, modulus: &str) -> Arc<ResidueCtx> {
    ResidueCtx::new(parse_poly(p, modulus).unwrap()).unwrap()
}

fn extension_field(p: u64, k: usize) -> Arc<ResidueCtx> {
    ResidueCtx::new(first_irreducible(p, k).unwrap()).unwrap()
}

fn random_f(seed: u64, len: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn bench_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier-transform");
    group.sample_size(20);
    for k in [4, 5] {
        let ctx = ring(3, &format!("t^{k}"));
        let f = random_f(7, ctx.size());
        group.bench_with_input(BenchmarkId::new("radix-p", ctx.size()), &f, |b, f| {
            b.iter(|| fourier_transform(&ctx, black_box(f)).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("direct", ctx.size()), &f, |b, f| {
            b.iter(|| naive::naive_transform(&ctx, black_box(f)));
        });
    }
    // The direct sum is already quadratic here; only the fast kernel scales on.
    let ctx = ring(3, "t^8");
    let f = random_f(7, ctx.size());
    group.bench_with_input(BenchmarkId::new("radix-p", ctx.size()), &f, |b, f| {
        b.iter(|| fourier_transform(&ctx, black_box(f)).unwrap());
    });
    group.finish();
}

fn bench_three_term(c: &mut Criterion) {
    let mut group = c.benchmark_group("three-term-count");
    group.sample_size(10);
    let sq = parse_ypoly(5, "y^2").unwrap();
    for k in [2, 3] {
        let ctx = extension_field(5, k);
        let zero = ctx.zero();
        let table = sq.eval_table(&ctx).unwrap();
        group.bench_with_input(BenchmarkId::new("convolution", ctx.size()), &ctx, |b, ctx| {
            b.iter(|| count_solutions_three(&sq, &sq, &sq, &zero, black_box(ctx)).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("triple-loop", ctx.size()), &ctx, |b, ctx| {
            b.iter(|| naive::solve3_direct(black_box(ctx), &table, &table, &table, 0));
        });
    }
    let ctx = extension_field(5, 4);
    let zero = ctx.zero();
    group.bench_with_input(BenchmarkId::new("convolution", ctx.size()), &ctx, |b, ctx| {
        b.iter(|| count_solutions_three(&sq, &sq, &sq, &zero, black_box(ctx)).unwrap());
    });
    group.finish();
}

#[cfg(feature = "parallel")]
fn bench_thread_scaling(c: &mut Criterion) {
    let ctx = ring(3, "t^7");
    let poly = parse_ypoly(3, "y^3+(t)*y").unwrap();
    let mut group = c.benchmark_group("multiplier-thread-scaling");
    group.sample_size(10);
    for threads in [1usize, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, _| {
            b.iter(|| pool.install(|| MultiplierAnalysis::new(black_box(&poly), &ctx).unwrap()));
        });
    }
    group.finish();
}

#[cfg(not(feature = "parallel"))]
fn bench_thread_scaling(c: &mut Criterion) {
    // Sequential build: measure the same kernel once for comparison against
    // the parallel feature's pool sweep.
    let ctx = ring(3, "t^7");
    let poly = parse_ypoly(3, "y^3+(t)*y").unwrap();
    let mut group = c.benchmark_group("multiplier-thread-scaling");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| MultiplierAnalysis::new(black_box(&poly), &ctx).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_transform, bench_three_term, bench_thread_scaling);
criterion_main!(benches);
