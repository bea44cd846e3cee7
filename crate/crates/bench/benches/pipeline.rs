use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use copypasta_bench::sample;
use copypasta_core::eval::{bench_grapheme, bootstrap_roc, BootstrapConfig, Score};
use copypasta_core::{classify_corpus, ClassifyOptions, GraphemeAlgorithm, Thresholds};

fn all_pairs(c: &mut Criterion) {
    let (corpus, _) = sample(200);
    let mut group = c.benchmark_group("all_pairs_200");
    group.sample_size(10);
    for alg in GraphemeAlgorithm::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(alg), &alg, |b, &alg| {
            b.iter(|| bench_grapheme(&corpus, &[alg]))
        });
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let (corpus, store) = sample(300);
    let mut group = c.benchmark_group("classify_300");
    group.sample_size(10);
    for prune in [false, true] {
        let options = ClassifyOptions {
            prune,
            workers: 1,
            ..ClassifyOptions::default()
        };
        group.bench_with_input(BenchmarkId::new("prune", prune), &options, |b, options| {
            b.iter(|| classify_corpus(&corpus, &store, &Thresholds::default(), options).unwrap())
        });
    }
    group.finish();
}

fn bootstrap(c: &mut Criterion) {
    let scores: Vec<Score> = (0..3000)
        .map(|i| Score::new((i * 7919 % 3000) as f64 / 3000.0, i % 2 == 0))
        .collect();
    let config = BootstrapConfig {
        n_resamples: 1000,
        ..BootstrapConfig::default()
    };
    let mut group = c.benchmark_group("bootstrap");
    group.sample_size(10);
    group.bench_function("roc_3000x1000", |b| {
        b.iter(|| bootstrap_roc(&scores, 0.5, &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, all_pairs, classify, bootstrap);
criterion_main!(benches);
