use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::grapheme::{GraphemeAlgorithm, PreparedText};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmTiming {
    pub pairs: u64,
    pub wall_seconds: f64,
    pub per_pair_seconds: f64,
    /// Pairs the measure could not score (too few bigrams).
    pub errors: u64,
    pub mean_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub messages: usize,
    pub pairs: u64,
    /// Keyed by algorithm tag.
    pub algorithms: BTreeMap<String, AlgorithmTiming>,
}

/// Times every cross-account pair of `corpus` under each algorithm on the
/// calling thread. Per-message preparation is included in the wall time.
pub fn bench_grapheme(corpus: &Corpus, algorithms: &[GraphemeAlgorithm]) -> BenchReport {
    let pairs = corpus.cross_account_pair_count();
    let algorithms = algorithms
        .iter()
        .map(|&alg| (alg.tag().to_string(), time_one(corpus, alg)))
        .collect();
    BenchReport {
        messages: corpus.len(),
        pairs,
        algorithms,
    }
}

fn time_one(corpus: &Corpus, algorithm: GraphemeAlgorithm) -> AlgorithmTiming {
    let start = Instant::now();
    let prepared: Vec<PreparedText> = corpus
        .messages()
        .iter()
        .map(|m| PreparedText::new(algorithm, m))
        .collect();
    let (mut pairs, mut errors, mut sum) = (0u64, 0u64, 0.0);
    for (i, j) in corpus.pair_indices() {
        pairs += 1;
        match algorithm.distance(black_box(&prepared[i]), black_box(&prepared[j])) {
            Ok(d) => sum += d.value,
            Err(_) => errors += 1,
        }
    }
    let wall_seconds = start.elapsed().as_secs_f64();
    let scored = pairs - errors;
    AlgorithmTiming {
        pairs,
        wall_seconds,
        per_pair_seconds: if pairs == 0 { 0.0 } else { wall_seconds / pairs as f64 },
        errors,
        mean_distance: if scored == 0 { 0.0 } else { sum / scored as f64 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{normalize, Message};
    use chrono::Utc;

    #[test]
    fn two_messages_one_pair() {
        let messages = vec![
            normalize(Message::new("a", "u1", Utc::now(), "the quick brown fox")),
            normalize(Message::new("b", "u2", Utc::now(), "the quick brown dog")),
        ];
        let report = bench_grapheme(&Corpus::from_messages(messages).unwrap(), &GraphemeAlgorithm::ALL);
        assert_eq!(report.pairs, 1);
        assert_eq!(report.algorithms.len(), 5);
        for t in report.algorithms.values() {
            assert_eq!((t.pairs, t.errors), (1, 0));
            assert!(t.mean_distance > 0.0 && t.mean_distance < 1.0);
        }
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["algorithms"]["lv"]["wall_seconds"].is_number());
    }

    #[test]
    fn single_word_messages_count_as_errors_for_word_bigrams() {
        let messages = vec![
            normalize(Message::new("a", "u1", Utc::now(), "hello")),
            normalize(Message::new("b", "u2", Utc::now(), "hullo")),
        ];
        let report = bench_grapheme(
            &Corpus::from_messages(messages).unwrap(),
            &[GraphemeAlgorithm::WordBigram],
        );
        assert_eq!(report.algorithms["bg_w"].errors, 1);
    }
}
