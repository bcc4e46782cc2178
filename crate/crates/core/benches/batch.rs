use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bstconn::batch::{self, Strategy};
use bstconn::instances::gen_random;
use bstconn::{build_witness, Instance};

const STRATEGIES: [(&str, Strategy); 2] =
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn random_batch(count: u64, n: usize) -> Vec<Instance> {
    (0..count).map(|seed| gen_random(n, 0.08, 0.04, seed).unwrap()).collect()
}

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_batch");
    for n in [32, 128] {
        let instances = random_batch(512, n);
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &instances, |b, xs| {
                b.iter(|| batch::decide_all_with(strategy, xs))
            });
        }
    }
    group.finish();
}

fn witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_batch");
    let instances = random_batch(256, 48);
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| batch::map_with(strategy, &instances, build_witness))
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_witness_n4");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| batch::exhaustive_witness_agreement(strategy, 4)));
    }
    group.finish();
}

criterion_group!(benches, decide, witness, exhaustive);
criterion_main!(benches);
