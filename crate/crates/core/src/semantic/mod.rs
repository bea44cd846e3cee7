//! Sentence-embedding vectors and the angular semantic distance.

mod provider;
mod store;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use provider::{
    fetch_embeddings, EmbeddingProvider, FetchConfig, FetchStats, FixtureProvider, HttpProvider, ProviderError,
};
pub use store::{EmbeddingStore, ProviderDescriptor, BINARY_MAGIC};

#[derive(Debug, thiserror::Error)]
pub enum EmbeddingError {
    #[error("dimension mismatch: expected {expected}, got {found}{}", id.as_ref().map(|i| format!(" for {i:?}")).unwrap_or_default())]
    DimensionMismatch {
        expected: usize,
        found: usize,
        id: Option<String>,
    },
    #[error("embedding is all zeros{}", id.as_ref().map(|i| format!(" for {i:?}")).unwrap_or_default())]
    ZeroVector { id: Option<String> },
    #[error("embedding has a non-finite entry{}", id.as_ref().map(|i| format!(" for {i:?}")).unwrap_or_default())]
    NonFinite { id: Option<String> },
    #[error("embedding has no entries")]
    Empty,
    #[error("duplicate embedding id {0:?}")]
    DuplicateId(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("binary embedding file: {0}")]
    Framing(String),
    #[error("{} message(s) have no embedding: {}", ids.len(), preview(ids))]
    Missing { ids: Vec<String> },
    #[error("embedding service failed ({reason}); {} message(s) left unembedded: {}", ids.len(), preview(ids))]
    Service { reason: String, ids: Vec<String> },
}

fn preview(ids: &[String]) -> String {
    const SHOWN: usize = 20;
    let mut s = ids.iter().take(SHOWN).cloned().collect::<Vec<_>>().join(", ");
    if ids.len() > SHOWN {
        s.push_str(&format!(", … ({} more)", ids.len() - SHOWN));
    }
    s
}

/// Validated embedding: non-empty, finite, not all zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EmbeddingVector {
    values: Vec<f64>,
    norm: f64,
}

impl EmbeddingVector {
    pub fn new(values: Vec<f64>) -> Result<Self, EmbeddingError> {
        if values.is_empty() {
            return Err(EmbeddingError::Empty);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(EmbeddingError::NonFinite { id: None });
        }
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(EmbeddingError::ZeroVector { id: None });
        }
        Ok(EmbeddingVector { values, norm })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }
}

impl TryFrom<Vec<f64>> for EmbeddingVector {
    type Error = EmbeddingError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        EmbeddingVector::new(values)
    }
}

impl From<EmbeddingVector> for Vec<f64> {
    fn from(v: EmbeddingVector) -> Self {
        v.values
    }
}

/// `arccos(cos θ) / π` with the cosine clamped to [−1, 1]: 0 for the same
/// direction, 0.5 for orthogonal, 1 for opposite.
pub fn dist_semantic(e1: &EmbeddingVector, e2: &EmbeddingVector) -> Result<f64, EmbeddingError> {
    if e1.dim() != e2.dim() {
        return Err(EmbeddingError::DimensionMismatch {
            expected: e1.dim(),
            found: e2.dim(),
            id: None,
        });
    }
    let dot: f64 = e1.values.iter().zip(&e2.values).map(|(a, b)| a * b).sum();
    let cosine = (dot / (e1.norm * e2.norm)).clamp(-1.0, 1.0);
    Ok(cosine.acos() / PI)
}
