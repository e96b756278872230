//! Sequential against parallel replicate execution.
//!
//! Without the `parallel` feature only the sequential rows are run.

use std::hint::black_box;

use alphagraph::experiments::replicate_summaries;
use alphagraph::model::{EdgeModel, ModelParams};
use alphagraph::par::Execution;
use alphagraph::sampler::sample_fast;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn executions() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn replicates(c: &mut Criterion) {
    let mut group = c.benchmark_group("replicate_summaries");
    group.sample_size(10);
    for n in [10_000, 100_000] {
        let model = EdgeModel::new(&ModelParams::alpha_model(n, 1.0, 2.0, 0).unwrap()).unwrap();
        for (name, exec) in executions() {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| black_box(replicate_summaries(&model, 1, 16, exec)))
            });
        }
    }
    group.finish();
}

fn sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_fast");
    group.sample_size(10);
    for n in [10_000, 1_000_000] {
        let model = EdgeModel::new(&ModelParams::alpha_model(n, 1.0, 2.0, 0).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(sample_fast(&model, 3)))
        });
    }
    group.finish();
}

criterion_group!(benches, replicates, sampler);
criterion_main!(benches);
