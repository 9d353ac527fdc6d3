use criterion::{criterion_group, criterion_main, Criterion};
use dyndeg_bench::{a_one, a_base};
use dyndeg_core::algebra::rational::rat;
use dyndeg_core::certify::{cone_condition, lambda1, lambda2_exact, ConeConfig};

fn certify(c: &mut Criterion) {
    let eps = rat(1, 1_000_000);
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    g.bench_function("lambda2_exact A", |b| b.iter(|| lambda2_exact(&a_base(), &eps)));
    g.bench_function("lambda2_exact A1", |b| b.iter(|| lambda2_exact(&a_one(), &eps)));
    let cone = cone_condition(&a_one(), &ConeConfig::default());
    g.bench_function("lambda1 A1", |b| b.iter(|| lambda1(&a_one(), &cone, &eps)));
    g.bench_function("cone_condition A1", |b| b.iter(|| cone_condition(&a_one(), &ConeConfig::default())));
    g.finish();
}

criterion_group!(benches, certify);
criterion_main!(benches);
