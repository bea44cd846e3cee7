use std::collections::HashMap;
use std::hash::Hash;

/// `Σ|n₁ − n₂| / Σ(n₁ + n₂)` over the union of bigrams of two token sequences.
///
/// Returns `None` if either sequence has fewer than two tokens.
pub fn bigram_distance<T: Eq + Hash>(a: &[T], b: &[T]) -> Option<f64> {
    if a.len() < 2 || b.len() < 2 {
        return None;
    }
    let mut tally: HashMap<(&T, &T), (i64, i64)> = HashMap::new();
    for w in a.windows(2) {
        tally.entry((&w[0], &w[1])).or_default().0 += 1;
    }
    for w in b.windows(2) {
        tally.entry((&w[0], &w[1])).or_default().1 += 1;
    }
    let (diff, total) = tally
        .values()
        .fold((0i64, 0i64), |(d, t), &(x, y)| (d + (x - y).abs(), t + x + y));
    Some(diff as f64 / total as f64)
}

/// Whitespace-separated, lowercased word tokens.
pub fn word_tokens(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_lowercase).collect()
}
