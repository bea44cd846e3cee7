//! Pair classification in the (grapheme, semantic, language) distance space.
//!
//! The decision cascade, with strict comparisons throughout:
//!
//! ```text
//! if d_grapheme < tau_p      -> CopyPasta
//! else if d_semantic < tau_s
//!     if d_language < tau_l  -> Rewording
//!     else                   -> Translation
//! else                       -> NoMatch
//! ```
//!
//! A distance equal to its threshold falls through to the next branch.
//! Later distances are only computed when the cascade reaches them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Message, PairKey};
use crate::grapheme::{prune_by_length, DistanceError, GraphemeAlgorithm, PreparedText};
use crate::language::{dist_language, LanguageTag};
use crate::semantic::{dist_semantic, EmbeddingError, EmbeddingStore, EmbeddingVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    CopyPasta,
    Rewording,
    Translation,
    NoMatch,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::CopyPasta, Label::Rewording, Label::Translation, Label::NoMatch];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::CopyPasta => "copy_pasta",
            Label::Rewording => "rewording",
            Label::Translation => "translation",
            Label::NoMatch => "no_match",
        }
    }

    pub fn is_match(self) -> bool {
        self != Label::NoMatch
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown label {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    pub tau_p: f64,
    pub tau_s: f64,
    pub tau_l: f64,
    pub grapheme_algorithm: GraphemeAlgorithm,
}

impl Default for Thresholds {
    /// Grapheme 0.31 and semantic 0.33, calibrated on synthetic data.
    fn default() -> Self {
        Thresholds {
            tau_p: 0.31,
            tau_s: 0.33,
            tau_l: 0.5,
            grapheme_algorithm: GraphemeAlgorithm::Levenshtein,
        }
    }
}

impl Thresholds {
    /// Precision-oriented preset for real data: semantic threshold lowered to 0.2.
    pub fn conservative() -> Self {
        Thresholds {
            tau_s: 0.2,
            ..Thresholds::default()
        }
    }

    pub fn validate(&self) -> Result<(), ClassifyError> {
        for (name, v) in [("tau_p", self.tau_p), ("tau_s", self.tau_s), ("tau_l", self.tau_l)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(ClassifyError::Threshold { name, value: v });
            }
        }
        Ok(())
    }

    /// How distances that land exactly on a threshold are treated.
    pub fn boundary_rule() -> &'static str {
        "comparisons are strict (<): a distance equal to its threshold fails that test and falls to the next branch"
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("{name} must lie strictly inside (0, 1), got {value}")]
    Threshold { name: &'static str, value: f64 },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("pair {pair}: {source}")]
    Distance {
        pair: PairKey,
        #[source]
        source: DistanceError,
    },
    #[error("message {0:?} appears twice in a pair")]
    SelfPair(String),
}

/// Classification result for one pair. Distances the cascade never reached are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    #[serde(flatten)]
    pub pair: PairKey,
    pub label: Label,
    pub d_grapheme: Option<f64>,
    pub d_semantic: Option<f64>,
    pub d_language: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Skip exact grapheme distances the length gap already rules out (Levenshtein only).
    pub prune: bool,
    /// Only call a pair copy-pasta when it is also semantically close.
    pub require_semantic_for_copypasta: bool,
    /// Keep `NoMatch` verdicts in the output.
    pub emit_nomatch: bool,
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
}

/// Distances known so far for a pair, filled in as the cascade asks for them.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Distances {
    pub grapheme: Option<f64>,
    pub semantic: Option<f64>,
    pub language: Option<f64>,
}

/// Runs the cascade, evaluating each distance lazily.
///
/// `grapheme` may return `None` to signal that the pair is known to be at or
/// above `tau_p` without an exact value (length pruning).
pub fn cascade<E>(
    t: &Thresholds,
    require_semantic_for_copypasta: bool,
    grapheme: impl FnOnce() -> Result<Option<f64>, E>,
    semantic: impl FnOnce() -> Result<f64, E>,
    language: impl FnOnce() -> f64,
) -> Result<(Label, Distances), E> {
    let mut d = Distances {
        grapheme: grapheme()?,
        ..Distances::default()
    };
    let graphemically_close = d.grapheme.is_some_and(|g| g < t.tau_p);
    if graphemically_close && !require_semantic_for_copypasta {
        return Ok((Label::CopyPasta, d));
    }
    let s = semantic()?;
    d.semantic = Some(s);
    if s < t.tau_s {
        if graphemically_close {
            return Ok((Label::CopyPasta, d));
        }
        let l = language();
        d.language = Some(l);
        let label = if l < t.tau_l {
            Label::Rewording
        } else {
            Label::Translation
        };
        Ok((label, d))
    } else {
        Ok((Label::NoMatch, d))
    }
}

/// Eager form of the cascade on three known distances.
pub fn label_for(d_grapheme: f64, d_semantic: f64, d_language: f64, t: &Thresholds) -> Label {
    cascade::<()>(t, false, || Ok(Some(d_grapheme)), || Ok(d_semantic), || d_language)
        .expect("infallible")
        .0
}

/// Classifies a single pair from its messages and embeddings.
pub fn classify_pair(
    x1: &Message,
    e1: &EmbeddingVector,
    x2: &Message,
    e2: &EmbeddingVector,
    t: &Thresholds,
) -> Result<PairVerdict, ClassifyError> {
    t.validate()?;
    let pair = PairKey::new(x1.id.as_str(), x2.id.as_str()).ok_or_else(|| ClassifyError::SelfPair(x1.id.clone()))?;
    let alg = t.grapheme_algorithm;
    let (label, d) = cascade(
        t,
        false,
        || {
            alg.distance(&PreparedText::new(alg, x1), &PreparedText::new(alg, x2))
                .map(|g| Some(g.value))
                .map_err(|source| ClassifyError::Distance {
                    pair: pair.clone(),
                    source,
                })
        },
        || dist_semantic(e1, e2).map_err(ClassifyError::from),
        || dist_language(&x1.language, &x2.language),
    )?;
    Ok(verdict(pair, label, d))
}

fn verdict(pair: PairKey, label: Label, d: Distances) -> PairVerdict {
    PairVerdict {
        pair,
        label,
        d_grapheme: d.grapheme,
        d_semantic: d.semantic,
        d_language: d.language,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyStats {
    pub evaluated: u64,
    pub pruned: u64,
    pub copy_pasta: u64,
    pub rewording: u64,
    pub translation: u64,
    pub no_match: u64,
}

impl ClassifyStats {
    fn record(&mut self, label: Label) {
        self.evaluated += 1;
        match label {
            Label::CopyPasta => self.copy_pasta += 1,
            Label::Rewording => self.rewording += 1,
            Label::Translation => self.translation += 1,
            Label::NoMatch => self.no_match += 1,
        }
    }

    fn add(mut self, other: ClassifyStats) -> Self {
        self.evaluated += other.evaluated;
        self.pruned += other.pruned;
        self.copy_pasta += other.copy_pasta;
        self.rewording += other.rewording;
        self.translation += other.translation;
        self.no_match += other.no_match;
        self
    }

    pub fn matches(&self) -> u64 {
        self.copy_pasta + self.rewording + self.translation
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOutput {
    /// Sorted by pair key.
    pub verdicts: Vec<PairVerdict>,
    pub stats: ClassifyStats,
}

struct Row<'a> {
    text: PreparedText,
    embedding: &'a EmbeddingVector,
    language: &'a LanguageTag,
    letters: usize,
}

/// Classifies every cross-account pair of `corpus`.
///
/// Every message must have an embedding; this is checked before any pair is
/// processed. Output is sorted by pair key, so it does not depend on `workers`.
pub fn classify_corpus(
    corpus: &Corpus,
    store: &EmbeddingStore,
    t: &Thresholds,
    options: &ClassifyOptions,
) -> Result<ClassifyOutput, ClassifyError> {
    t.validate()?;
    store.check_covers(corpus)?;
    let alg = t.grapheme_algorithm;
    let prune = options.prune && alg == GraphemeAlgorithm::Levenshtein;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let rows: Vec<Row> = corpus
            .messages()
            .par_iter()
            .map(|m| Row {
                text: PreparedText::new(alg, m),
                embedding: store.get(&m.id).expect("coverage checked"),
                language: &m.language,
                letters: m.letter_count(),
            })
            .collect();

        let per_row: Vec<(Vec<PairVerdict>, ClassifyStats)> = (0..corpus.len())
            .into_par_iter()
            .map(|i| {
                let mut verdicts = Vec::new();
                let mut stats = ClassifyStats::default();
                for (_, j) in corpus.row_pairs(i) {
                    let (a, b) = (&rows[i], &rows[j]);
                    let exact_grapheme = || {
                        alg.distance(&a.text, &b.text)
                            .map(|g| g.value)
                            .map_err(|source| ClassifyError::Distance {
                                pair: corpus.pair_key(i, j),
                                source,
                            })
                    };
                    let pruned = prune && prune_by_length(a.letters, b.letters, t.tau_p);
                    let (label, mut d) = cascade(
                        t,
                        options.require_semantic_for_copypasta,
                        || if pruned { Ok(None) } else { exact_grapheme().map(Some) },
                        || dist_semantic(a.embedding, b.embedding).map_err(ClassifyError::from),
                        || dist_language(a.language, b.language),
                    )?;
                    if pruned {
                        stats.pruned += 1;
                    }
                    stats.record(label);
                    if label.is_match() || options.emit_nomatch {
                        // Matches always report the exact grapheme distance.
                        if pruned && label.is_match() {
                            d.grapheme = Some(exact_grapheme()?);
                        }
                        verdicts.push(verdict(corpus.pair_key(i, j), label, d));
                    }
                }
                Ok((verdicts, stats))
            })
            .collect::<Result<_, ClassifyError>>()?;

        let mut stats = ClassifyStats::default();
        let mut verdicts = Vec::new();
        for (v, s) in per_row {
            verdicts.extend(v);
            stats = stats.add(s);
        }
        verdicts.par_sort_unstable_by(|x, y| x.pair.cmp(&y.pair));
        Ok(ClassifyOutput { verdicts, stats })
    })
}

#[derive(Debug, thiserror::Error)]
pub enum VerdictFileError {
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Record {
        path: std::path::PathBuf,
        line: usize,
        message: String,
    },
}

/// One verdict object per line, in the given order.
pub fn write_verdicts(path: &std::path::Path, verdicts: &[PairVerdict]) -> Result<(), VerdictFileError> {
    use std::io::Write;
    let io = |source| VerdictFileError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for v in verdicts {
        serde_json::to_writer(&mut out, v).map_err(|e| io(e.into()))?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Reads a verdict file; pairs are re-canonicalized so `a < b` always holds.
pub fn read_verdicts(path: &std::path::Path) -> Result<Vec<PairVerdict>, VerdictFileError> {
    use std::io::BufRead;
    let io = |source| VerdictFileError::Io {
        path: path.to_path_buf(),
        source,
    };
    let reader = std::io::BufReader::new(std::fs::File::open(path).map_err(io)?);
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let record = |message: String| VerdictFileError::Record {
            path: path.to_path_buf(),
            line: n + 1,
            message,
        };
        let mut v: PairVerdict = serde_json::from_str(&line).map_err(|e| record(e.to_string()))?;
        v.pair = PairKey::new(v.pair.first(), v.pair.second()).ok_or_else(|| record("self-pair".into()))?;
        out.push(v);
    }
    Ok(out)
}
