pub mod bench;
pub mod classify;
pub mod embed;
pub mod eval;
pub mod graph;
pub mod preprocess;
pub mod synth;

use std::path::Path;

use anyhow::Context;
use copypasta_core::{Corpus, GraphemeAlgorithm};

pub(crate) fn read_corpus(path: &Path) -> anyhow::Result<Corpus> {
    Corpus::read_jsonl(path).with_context(|| format!("loading corpus {}", path.display()))
}

pub(crate) fn parse_algorithm(s: &str) -> Result<GraphemeAlgorithm, String> {
    s.parse()
        .map_err(|e: copypasta_core::grapheme::DistanceError| e.to_string())
}

/// Overrides `slot` when the flag was given.
pub(crate) fn set<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

/// Boolean switches only ever turn a setting on.
pub(crate) fn enable(slot: &mut bool, flag: bool) {
    if flag {
        *slot = true;
    }
}
