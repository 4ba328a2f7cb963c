//! Parallel versus single-threaded throughput on the two hot paths: the
//! exact kernel computation and the nested numeric sums.
//!
//! Build with `--no-default-features` to time the plain sequential loops
//! instead of a one-thread rayon pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pmskit::numerics::{eval_hurwitz, NumericOptions, SumVariant};
use pmskit::relations::{kernel_of, KernelMap};
use pmskit::Composition;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    vec![("pool", all), ("one-thread", one)]
}

fn kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel_psi");
    g.sample_size(10);
    for (name, pool) in pools() {
        for w in [6usize, 8] {
            g.bench_with_input(BenchmarkId::new(name, w), &w, |b, &w| {
                b.iter(|| pool.install(|| kernel_of(KernelMap::Psi, w).unwrap().dim()))
            });
        }
    }
    g.finish();
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("hurwitz_sum");
    g.sample_size(20);
    let opts = NumericOptions::default();
    let k = Composition::from_parts(&[1, 1, 2]);
    let alpha = Complex64::new(0.3, 0.2);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "1,1,2"), |b| {
            b.iter(|| pool.install(|| eval_hurwitz(&k, alpha, SumVariant::Strict, &opts).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, kernel, sums);
criterion_main!(benches);
