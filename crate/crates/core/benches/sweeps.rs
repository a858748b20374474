//! Parallel vs sequential parameter sweeps: the lens-space CS range and a
//! batch of Smith normal forms.  With the default `parallel` feature,
//! `par::map` fans out over rayon; `par::map_seq` is the sequential
//! reference.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use chernweil::homology::{snf, IntMat};
use chernweil::secondary::{cs_lens3, cs_lens3_refined};

fn lens_sweep(c: &mut Criterion) {
    let ks: Vec<u32> = (1..=400).collect();
    let mut group = c.benchmark_group("cs_lens3_sweep_1_400");
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || ks.clone(),
            |ks| chernweil::par::map(ks, |k| (cs_lens3(k), cs_lens3_refined(k))),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || ks.clone(),
            |ks| chernweil::par::map_seq(ks, |k| (cs_lens3(k), cs_lens3_refined(k))),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn snf_batch(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(42);
    let matrices: Vec<IntMat> = (0..64)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| (0..6).map(|_| rng.gen_range(-50..=50)).collect())
                .collect();
            IntMat::from_rows(&rows)
        })
        .collect();
    let mut group = c.benchmark_group("snf_batch_64x6x6");
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || matrices.clone(),
            |ms| chernweil::par::map(ms, |m| snf(&m).invariant_factors()),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || matrices.clone(),
            |ms| chernweil::par::map_seq(ms, |m| snf(&m).invariant_factors()),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, lens_sweep, snf_batch);
criterion_main!(benches);
