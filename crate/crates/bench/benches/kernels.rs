use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dyndeg_bench::{a_one, a_base};
use dyndeg_core::maps::{build_fa, ProjPointQ};
use dyndeg_core::psi::{psi_seq, CONE_FUNCTIONALS, CONE_VECTORS};
use dyndeg_core::recur::linrec::{mod_cycle, seq_from_pair};

fn kernels(c: &mut Criterion) {
    let seq = seq_from_pair(&a_one(), &CONE_VECTORS[0], &CONE_FUNCTIONALS[2]);
    c.bench_function("mod_cycle m=1999", |b| b.iter(|| mod_cycle(black_box(&seq), 1999, 10_000_000)));
    c.bench_function("mod_cycle m=59", |b| b.iter(|| mod_cycle(black_box(&seq), 59, 10_000_000)));

    let inv = a_base().inverse().unwrap();
    c.bench_function("psi_seq A^-1 n=64", |b| b.iter(|| psi_seq(black_box(&inv), 64)));

    let f = build_fa(&a_base()).unwrap().forward;
    let p = ProjPointQ::from_ints([1, 2, 3, 5]).unwrap();
    c.bench_function("f_A evaluate", |b| b.iter(|| f.evaluate(black_box(&p))));
}

criterion_group!(benches, kernels);
criterion_main!(benches);
