//! Detection of coordinated textual duplication in short-message corpora.
//!
//! Every cross-account message pair is placed in a three-distance space
//! (grapheme, semantic, language) and labelled copy-pasta, rewording,
//! translation or no match. Around that kernel sit the preprocessing
//! pipeline ([`corpus`]), result aggregation ([`graph`]) and the evaluation
//! toolkit ([`eval`]).

pub mod classifier;
pub mod corpus;
pub mod eval;
pub mod graph;
pub mod grapheme;
pub mod language;
pub mod semantic;
pub mod synth;

pub use classifier::{classify_corpus, classify_pair, ClassifyOptions, Label, PairVerdict, Thresholds};
pub use corpus::{Corpus, Message, PairKey};
pub use graph::{
    build_message_graph, connected_components, project_accounts, AccountGraph, DuplicationGraph, MethodMix, ThemeMap,
};
pub use grapheme::GraphemeAlgorithm;
pub use language::{dist_language, LanguageTag};
pub use semantic::{dist_semantic, EmbeddingStore, EmbeddingVector};
