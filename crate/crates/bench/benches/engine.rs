use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use patcalc_bench::{constant_generators, day_inputs};
use patcalc_core::day::day_convolve;
use patcalc_core::freealg::free_algebra;
use patcalc_core::kan::lan;
use patcalc_core::morita::check_morita;
use patcalc_core::patterns::{check_cartesian_pattern, fiber_product_with_gamma};
use patcalc_core::stdlib::{ass, cut, f_star};
use patcalc_core::testing::suite::kan_instance;
use patcalc_core::testing::TestRng;
use rand::SeedableRng;

fn patterns(c: &mut Criterion) {
    let mut g = c.benchmark_group("patterns");
    g.sample_size(10);
    for (name, p) in [("f_star(3)", f_star(3)), ("ass(3)", ass(3))] {
        let p = Arc::new(p.unwrap());
        g.bench_with_input(BenchmarkId::new("cartesian", name), &p, |b, p| {
            b.iter(|| check_cartesian_pattern(p))
        });
        g.bench_with_input(BenchmarkId::new("gamma_fiber", name), &p, |b, p| {
            b.iter(|| fiber_product_with_gamma(p).unwrap())
        });
    }
    g.finish();
}

fn kan(c: &mut Criterion) {
    let mut rng = TestRng::seed_from_u64(7);
    let instances: Vec<_> = (0..20).map(|_| kan_instance(&mut rng)).collect();
    c.bench_function("lan/20 random instances", |b| {
        b.iter(|| {
            for (f, x) in &instances {
                lan(f, x).unwrap();
            }
        })
    });
}

fn freealg(c: &mut Criterion) {
    let p = f_star(3).unwrap();
    let mut g = c.benchmark_group("free_algebra");
    g.sample_size(10);
    for n in [1, 2, 3] {
        let phi = constant_generators(&p, n).unwrap();
        g.bench_with_input(BenchmarkId::new("f_star(3)", n), &phi, |b, phi| {
            b.iter(|| free_algebra(&p, phi, 3).unwrap())
        });
    }
    g.finish();
}

fn day(c: &mut Criterion) {
    let p = Arc::new(f_star(2).unwrap());
    let mut g = c.benchmark_group("day_convolve");
    for k in [2, 4, 8] {
        let (m, u, inputs) = day_inputs(&p, k).unwrap();
        g.bench_with_input(BenchmarkId::new("discrete_cyclic", k), &inputs, |b, inputs| {
            b.iter(|| day_convolve(&m, u, inputs).unwrap())
        });
    }
    g.finish();
}

fn morita(c: &mut Criterion) {
    let f = cut(3).unwrap();
    let mut g = c.benchmark_group("morita");
    g.sample_size(10);
    g.bench_function("cut(3)", |b| b.iter(|| check_morita(&f).unwrap()));
    g.finish();
}

criterion_group!(benches, patterns, kan, freealg, day, morita);
criterion_main!(benches);
