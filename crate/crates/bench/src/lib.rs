//! Shared inputs for the benchmarks.

use copypasta_core::synth::{generate, SynthConfig};
use copypasta_core::{Corpus, EmbeddingStore};

/// First `n` messages of a small synthetic corpus, with their embeddings.
pub fn sample(n: usize) -> (Corpus, EmbeddingStore) {
    let fixture = generate(&SynthConfig {
        seeds: 20,
        controls: n,
        dim: 64,
        ..SynthConfig::default()
    });
    let messages: Vec<_> = fixture.corpus.into_messages().into_iter().take(n).collect();
    (
        Corpus::from_messages(messages).expect("ids are unique"),
        fixture.embeddings,
    )
}

/// A tweet-length pair differing by a few words.
pub const PAIR: (&str, &str) = (
    "Tomorrow we march together downtown for fair wages and safe streets, bring your friends and your neighbours #rally",
    "Tomorrow we all march downtown together for fair pay and safer streets!! bring friends and neighbours 🙏 #rally #now",
);
