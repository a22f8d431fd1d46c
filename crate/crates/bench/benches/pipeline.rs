use criterion::{criterion_group, criterion_main, Criterion};
use netvax_core::degrees::{poisson, sample_degree_sequence};
use netvax_core::epidemic::{run_epidemic, ThresholdPolicy};
use netvax_core::graphgen::{configuration_multigraph, HalfEdgeGraph};
use netvax_core::rng::rng_from_seed;
use netvax_core::theory::critical_coverage;
use netvax_core::{StrategyKind, VaccinationMask};

fn graph(n: usize) -> HalfEdgeGraph {
    let d = poisson(6.0, 1e-12).unwrap();
    let mut rng = rng_from_seed(1);
    let seq = sample_degree_sequence(&d, n, &mut rng).unwrap();
    configuration_multigraph(&seq, &mut rng)
}

fn bench_generation(c: &mut Criterion) {
    let d = poisson(6.0, 1e-12).unwrap();
    let mut rng = rng_from_seed(2);
    let seq = sample_degree_sequence(&d, 100_000, &mut rng).unwrap();
    c.bench_function("configuration_multigraph n=1e5", |b| {
        b.iter(|| configuration_multigraph(&seq, &mut rng))
    });
}

fn bench_epidemic(c: &mut Criterion) {
    let g = graph(100_000);
    let mask = VaccinationMask::empty(g.n());
    let mut rng = rng_from_seed(3);
    c.bench_function("run_epidemic n=1e5 p=0.5", |b| {
        b.iter(|| run_epidemic(&g, &mask, 0.5, ThresholdPolicy::default(), &mut rng).unwrap())
    });
}

fn bench_theory(c: &mut Criterion) {
    let d = poisson(6.0, 1e-12).unwrap();
    for kind in StrategyKind::ALL {
        c.bench_function(&format!("critical_coverage {kind}"), |b| {
            b.iter(|| critical_coverage(&d, 0.5, kind).unwrap())
        });
    }
}

criterion_group!(benches, bench_generation, bench_epidemic, bench_theory);
criterion_main!(benches);
