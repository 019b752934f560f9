use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use toricmld::{find_witness, mld, mld_bruteforce, Rat, DEFAULT_GUARD};
use toricmld_bench::{family, surface_quotient};

fn cyclic(c: &mut Criterion) {
    let mut group = c.benchmark_group("mld_cyclic_surface");
    for r in [101i64, 1009, 10007] {
        let x = surface_quotient(r, 37).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(r), &x, |b, x| b.iter(|| mld(black_box(x)).unwrap()));
    }
    group.finish();
}

fn family_total_space(c: &mut Criterion) {
    let mut group = c.benchmark_group("mld_family");
    group.sample_size(10);
    for (l, mfs) in family(2..=8).unwrap() {
        group.bench_with_input(BenchmarkId::from_parameter(l), &mfs, |b, mfs| {
            b.iter(|| mld(black_box(mfs.x())).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let x = surface_quotient(211, 17).unwrap();
    c.bench_function("mld_bruteforce_211", |b| {
        b.iter(|| mld_bruteforce(black_box(&x), &Rat::from_integer(1.into()), DEFAULT_GUARD).unwrap())
    });
}

fn witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_witness_family");
    group.sample_size(10);
    for (l, mfs) in family(3..=6).unwrap() {
        let delta = mld(mfs.y()).unwrap().value;
        group.bench_with_input(BenchmarkId::from_parameter(l), &mfs, |b, mfs| {
            b.iter(|| find_witness(black_box(mfs), &delta).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cyclic, family_total_space, oracle, witness);
criterion_main!(benches);
