use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};

use primescan::constraints::{build_subbase_g, gpru_sweep, scan, ConstraintSpec};
use primescan::groups::GroupModel;
use primescan::modular::kronecker;
use primescan::polyarith::{factor_type_mod_p, IntPoly};
use primescan::primes::{factorize, sieve};

fn bench_sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    for limit in [100_000u64, 1_000_000] {
        group.throughput(Throughput::Elements(limit));
        group.bench_with_input(format!("limit-{}", limit), &limit, |b, &limit| {
            b.iter(|| sieve(black_box(limit)).unwrap())
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let table = sieve(100_000).unwrap();
    let pi = table.prime_count(100_000).unwrap();
    let mut group = c.benchmark_group("scan-100k");
    group.throughput(Throughput::Elements(pi));

    let congruence = build_subbase_g(12, &[5, -4, 8], &[]).unwrap();
    group.bench_function("subbase-congruence", |b| {
        b.iter(|| scan(black_box(&congruence), 100_000, &[], &table).unwrap())
    });

    let cubic = vec![(IntPoly::from_i64(&[-1, -1, 0, 1]), GroupModel::Symmetric(3))];
    let with_poly = build_subbase_g(12, &[5, -4, 8], &cubic).unwrap();
    group.bench_function("subbase-with-cubic", |b| {
        b.iter(|| scan(black_box(&with_poly), 100_000, &[], &table).unwrap())
    });

    let sg = [ConstraintSpec::sophie_germain()];
    group.bench_function("sophie-germain", |b| {
        b.iter(|| scan(black_box(&sg), 100_000, &[], &table).unwrap())
    });
    group.finish();
}

fn bench_factor_type(c: &mut Criterion) {
    let table = sieve(10_000).unwrap();
    let primes: Vec<u64> = table.primes().collect();
    let cubic = IntPoly::from_i64(&[-1, -1, 0, 1]);
    let quintic = IntPoly::from_i64(&[16, 20, 0, 0, 0, 1]);
    let mut group = c.benchmark_group("factor-type-10k");
    group.throughput(Throughput::Elements(primes.len() as u64));
    group.bench_function("cubic", |b| {
        b.iter(|| {
            for &p in &primes {
                if p != 23 {
                    black_box(factor_type_mod_p(&cubic, p).unwrap());
                }
            }
        })
    });
    group.bench_function("quintic", |b| {
        b.iter(|| {
            for &p in &primes {
                if p != 2 && p != 5 {
                    black_box(factor_type_mod_p(&quintic, p).unwrap());
                }
            }
        })
    });
    group.finish();
}

fn bench_gpru(c: &mut Criterion) {
    let table = sieve(2_000).unwrap();
    c.bench_function("gpru-sweep-2k", |b| {
        b.iter(|| gpru_sweep(black_box(2_000), &table).unwrap())
    });
}

fn bench_small_ops(c: &mut Criterion) {
    c.bench_function("kronecker-grid", |b| {
        b.iter(|| {
            let mut acc = 0i64;
            for d in -50i64..=50 {
                for n in 1i64..500 {
                    acc += kronecker(black_box(d), black_box(2 * n + 1)) as i64;
                }
            }
            acc
        })
    });
    c.bench_function("factorize-near-2^32", |b| {
        b.iter(|| factorize(black_box(4_294_967_291 - 1)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_sieve,
    bench_scan,
    bench_factor_type,
    bench_gpru,
    bench_small_ops
);
criterion_main!(benches);
