use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::language::LanguageTag;

/// One post, with the two normalized text variants used by the distance kernels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub id: String,
    pub account_id: String,
    pub created_at: DateTime<Utc>,
    #[serde(rename = "lang", default)]
    pub language: LanguageTag,
    #[serde(rename = "text")]
    pub raw_text: String,
    /// Links and mentions removed, hashtags kept, whitespace collapsed.
    #[serde(default)]
    pub semantic_text: String,
    /// Letters and digits only, lowercased.
    #[serde(default)]
    pub grapheme_text: String,
    #[serde(default)]
    pub is_retweet: bool,
}

impl Message {
    pub fn new(
        id: impl Into<String>,
        account_id: impl Into<String>,
        created_at: DateTime<Utc>,
        raw_text: impl Into<String>,
    ) -> Self {
        let raw_text = raw_text.into();
        let is_retweet = super::looks_like_retweet(&raw_text);
        Message {
            id: id.into(),
            account_id: account_id.into(),
            created_at,
            language: LanguageTag::undetermined(),
            raw_text,
            semantic_text: String::new(),
            grapheme_text: String::new(),
            is_retweet,
        }
    }

    pub fn with_language(mut self, language: LanguageTag) -> Self {
        self.language = language;
        self
    }

    /// Number of codepoints in `grapheme_text`; this is what the length filter counts.
    pub fn letter_count(&self) -> usize {
        self.grapheme_text.chars().count()
    }
}

/// Unordered message pair, stored with `first < second` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairKey {
    #[serde(rename = "a")]
    first: String,
    #[serde(rename = "b")]
    second: String,
}

impl PairKey {
    /// Builds the canonical key for two distinct ids, in either order.
    ///
    /// Returns `None` when both ids are equal.
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Option<Self> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(PairKey { first: a, second: b }),
            std::cmp::Ordering::Greater => Some(PairKey { first: b, second: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn second(&self) -> &str {
        &self.second
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}
