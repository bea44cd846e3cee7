//! String-level distances between messages, all normalized into [0, 1]
//! with 0 meaning identical.
//!
//! | tag    | measure                                  | input text      |
//! |--------|------------------------------------------|-----------------|
//! | `lv`   | Levenshtein / longest length             | `grapheme_text` |
//! | `ro`   | 1 − 2·matched / total length             | `grapheme_text` |
//! | `gz`   | normalized compression distance (DEFLATE)| `grapheme_text` |
//! | `bg_w` | word-bigram count distance               | `semantic_text` |
//! | `bg_l` | letter-bigram count distance             | `grapheme_text` |
//!
//! Levenshtein, Ratcliff-Obershelp and the bigram measures count Unicode
//! scalar values; the compression distance works on UTF-8 bytes.

mod bigram;
mod compression;
mod levenshtein;
mod ratcliff;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bigram::{bigram_distance, word_tokens};
pub use compression::{compressed_len, deflate_len, ncd, ncd_with_lengths, COMPRESSION_LEVEL, GZIP_OVERHEAD};
pub use levenshtein::{levenshtein, normalized_levenshtein};
pub use ratcliff::{matching_characters, ratcliff_obershelp_distance};

use crate::corpus::Message;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphemeAlgorithm {
    #[serde(rename = "lv")]
    Levenshtein,
    #[serde(rename = "ro")]
    RatcliffObershelp,
    #[serde(rename = "gz")]
    Gzip,
    #[serde(rename = "bg_w")]
    WordBigram,
    #[serde(rename = "bg_l")]
    LetterBigram,
}

impl GraphemeAlgorithm {
    pub const ALL: [GraphemeAlgorithm; 5] = [
        GraphemeAlgorithm::Levenshtein,
        GraphemeAlgorithm::RatcliffObershelp,
        GraphemeAlgorithm::Gzip,
        GraphemeAlgorithm::WordBigram,
        GraphemeAlgorithm::LetterBigram,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GraphemeAlgorithm::Levenshtein => "lv",
            GraphemeAlgorithm::RatcliffObershelp => "ro",
            GraphemeAlgorithm::Gzip => "gz",
            GraphemeAlgorithm::WordBigram => "bg_w",
            GraphemeAlgorithm::LetterBigram => "bg_l",
        }
    }

    /// Distance between two prepared messages.
    pub fn distance(self, a: &PreparedText, b: &PreparedText) -> Result<GraphemeDistance, DistanceError> {
        let value = match self {
            GraphemeAlgorithm::Levenshtein => normalized_levenshtein(&a.chars, &b.chars),
            GraphemeAlgorithm::RatcliffObershelp => ratcliff_obershelp_distance(&a.chars, &b.chars),
            GraphemeAlgorithm::Gzip => {
                ncd_with_lengths(a.text.as_bytes(), b.text.as_bytes(), a.compressed_len, b.compressed_len)
            }
            GraphemeAlgorithm::WordBigram => {
                bigram_distance(&a.words, &b.words).ok_or_else(|| insufficient(BigramUnit::Word, &a.words, &b.words))?
            }
            GraphemeAlgorithm::LetterBigram => bigram_distance(&a.chars, &b.chars)
                .ok_or_else(|| insufficient(BigramUnit::Letter, &a.chars, &b.chars))?,
        };
        Ok(GraphemeDistance { value, algorithm: self })
    }
}

impl fmt::Display for GraphemeAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphemeAlgorithm {
    type Err = DistanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphemeAlgorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s.trim().to_ascii_lowercase().replace('/', "_"))
            .ok_or_else(|| DistanceError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BigramUnit {
    Word,
    Letter,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistanceError {
    #[error("insufficient bigrams: {unit:?} unit needs at least 2 tokens per string, got {left} and {right}")]
    InsufficientBigrams {
        unit: BigramUnit,
        left: usize,
        right: usize,
    },
    #[error("unknown grapheme algorithm {0:?} (expected lv, ro, gz, bg_w or bg_l)")]
    UnknownAlgorithm(String),
}

fn insufficient<T>(unit: BigramUnit, a: &[T], b: &[T]) -> DistanceError {
    DistanceError::InsufficientBigrams {
        unit,
        left: a.len(),
        right: b.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphemeDistance {
    pub value: f64,
    pub algorithm: GraphemeAlgorithm,
}

/// Normalized Levenshtein distance over codepoints.
pub fn dist_levenshtein(x1: &str, x2: &str) -> GraphemeDistance {
    let (a, b): (Vec<char>, Vec<char>) = (x1.chars().collect(), x2.chars().collect());
    GraphemeDistance {
        value: normalized_levenshtein(&a, &b),
        algorithm: GraphemeAlgorithm::Levenshtein,
    }
}

/// Symmetrized Ratcliff-Obershelp distance over codepoints.
pub fn dist_ratcliff_obershelp(x1: &str, x2: &str) -> GraphemeDistance {
    let (a, b): (Vec<char>, Vec<char>) = (x1.chars().collect(), x2.chars().collect());
    GraphemeDistance {
        value: ratcliff_obershelp_distance(&a, &b),
        algorithm: GraphemeAlgorithm::RatcliffObershelp,
    }
}

/// Normalized compression distance over UTF-8 bytes.
pub fn dist_gzip(x1: &str, x2: &str) -> GraphemeDistance {
    GraphemeDistance {
        value: ncd(x1.as_bytes(), x2.as_bytes()),
        algorithm: GraphemeAlgorithm::Gzip,
    }
}

/// Bigram count distance; words are whitespace tokens, letters are codepoints.
pub fn dist_bigram(x1: &str, x2: &str, unit: BigramUnit) -> Result<GraphemeDistance, DistanceError> {
    match unit {
        BigramUnit::Word => {
            let (a, b) = (word_tokens(x1), word_tokens(x2));
            let value = bigram_distance(&a, &b).ok_or_else(|| insufficient(unit, &a, &b))?;
            Ok(GraphemeDistance {
                value,
                algorithm: GraphemeAlgorithm::WordBigram,
            })
        }
        BigramUnit::Letter => {
            let (a, b): (Vec<char>, Vec<char>) = (x1.chars().collect(), x2.chars().collect());
            let value = bigram_distance(&a, &b).ok_or_else(|| insufficient(unit, &a, &b))?;
            Ok(GraphemeDistance {
                value,
                algorithm: GraphemeAlgorithm::LetterBigram,
            })
        }
    }
}

/// True when the length gap alone puts the normalized Levenshtein distance
/// above `tau_p`, since `lv(x1, x2) ≥ |len1 − len2|`.
pub fn prune_by_length(len1: usize, len2: usize, tau_p: f64) -> bool {
    let longest = len1.max(len2);
    if longest == 0 {
        return false;
    }
    len1.abs_diff(len2) as f64 / longest as f64 > tau_p
}

/// Per-message inputs for [`GraphemeAlgorithm::distance`], computed once per corpus.
#[derive(Debug, Clone, Default)]
pub struct PreparedText {
    text: String,
    chars: Vec<char>,
    words: Vec<String>,
    compressed_len: usize,
}

impl PreparedText {
    pub fn new(algorithm: GraphemeAlgorithm, message: &Message) -> Self {
        Self::from_texts(algorithm, &message.grapheme_text, &message.semantic_text)
    }

    /// `grapheme` feeds every measure except word bigrams, which split `semantic`.
    pub fn from_texts(algorithm: GraphemeAlgorithm, grapheme: &str, semantic: &str) -> Self {
        let mut p = PreparedText::default();
        match algorithm {
            GraphemeAlgorithm::Levenshtein | GraphemeAlgorithm::RatcliffObershelp | GraphemeAlgorithm::LetterBigram => {
                p.chars = grapheme.chars().collect()
            }
            GraphemeAlgorithm::Gzip => {
                p.compressed_len = compressed_len(grapheme.as_bytes());
                p.text = grapheme.to_string();
            }
            GraphemeAlgorithm::WordBigram => p.words = word_tokens(semantic),
        }
        p
    }

    /// Codepoint length of the grapheme text, when the algorithm keeps it.
    pub fn char_len(&self) -> usize {
        self.chars.len()
    }
}
