use criterion::{black_box, criterion_group, criterion_main, Criterion};

use copypasta_bench::PAIR;
use copypasta_core::corpus::grapheme_text;
use copypasta_core::grapheme::{dist_bigram, dist_gzip, dist_levenshtein, dist_ratcliff_obershelp, BigramUnit};

fn kernels(c: &mut Criterion) {
    let (a, b) = (grapheme_text(PAIR.0), grapheme_text(PAIR.1));
    let mut group = c.benchmark_group("distance");
    group.bench_function("lv", |bench| {
        bench.iter(|| dist_levenshtein(black_box(&a), black_box(&b)))
    });
    group.bench_function("ro", |bench| {
        bench.iter(|| dist_ratcliff_obershelp(black_box(&a), black_box(&b)))
    });
    group.bench_function("gz", |bench| bench.iter(|| dist_gzip(black_box(&a), black_box(&b))));
    group.bench_function("bg_w", |bench| {
        bench.iter(|| dist_bigram(black_box(PAIR.0), black_box(PAIR.1), BigramUnit::Word))
    });
    group.bench_function("bg_l", |bench| {
        bench.iter(|| dist_bigram(black_box(&a), black_box(&b), BigramUnit::Letter))
    });
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
