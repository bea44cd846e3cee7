//! ROC analysis, Youden threshold selection, bootstrap intervals, confusion
//! matrices and grapheme timing.

mod bench;
mod bootstrap;
mod confusion;
mod labeled;
mod roc;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use bench::{bench_grapheme, AlgorithmTiming, BenchReport};
pub use bootstrap::{bootstrap_ci, bootstrap_roc, mean, BootstrapConfig, Interval, RocIntervals, DEFAULT_SEED};
pub use confusion::{class_name, confusion, Averages, ClassMetrics, ConfusionMatrix, ConfusionReport, CLASS_ORDER};
pub use labeled::{
    classify_labeled, grapheme_scores, load_labeled_pairs, parse_truth, semantic_scores, LabeledPair, LabeledRecord,
    LabeledSet,
};
pub use roc::{roc, youden_optimal, BinaryCounts, Resolution, RocCurve, RocPoint, Score, YoudenPoint};

use crate::classifier::{ClassifyError, Label, Thresholds};
use crate::corpus::PairKey;
use crate::grapheme::{DistanceError, GraphemeAlgorithm};
use crate::semantic::{EmbeddingError, EmbeddingStore};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("ROC needs both classes, got {positives} positive and {negatives} negative scores")]
    SingleClass { positives: usize, negatives: usize },
    #[error("non-finite score {0}")]
    NonFinite(f64),
    #[error("no samples to resample")]
    Empty,
    #[error("bootstrap needs at least one resample and a level in (0, 1), got {n_resamples} and {level}")]
    Bootstrap { n_resamples: usize, level: f64 },
    #[error("verdict for {0} has no ground truth")]
    UnmatchedPair(PairKey),
    #[error("line {line}: unknown truth label {value:?} (expected control, copy_pasta, rewording or translation)")]
    UnknownTruth { line: usize, value: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("pair {pair}: {source}")]
    Distance {
        pair: PairKey,
        #[source]
        source: DistanceError,
    },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationConfig {
    pub algorithms: Vec<GraphemeAlgorithm>,
    pub thresholds: Thresholds,
    pub bootstrap: BootstrapConfig,
    pub resolution: Resolution,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            algorithms: GraphemeAlgorithm::ALL.to_vec(),
            thresholds: Thresholds::default(),
            bootstrap: BootstrapConfig::default(),
            resolution: Resolution::Unique,
        }
    }
}

/// One ROC analysis: the curve, its optimum and bootstrap intervals there.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveReport {
    pub positives: usize,
    pub negatives: usize,
    pub auc: f64,
    pub optimal: YoudenPoint,
    pub intervals: RocIntervals,
    pub roc: RocCurve,
}

fn curve_report(scores: &[Score], config: &EvaluationConfig) -> Result<CurveReport, EvalError> {
    let curve = roc(scores, config.resolution)?;
    let optimal = youden_optimal(&curve);
    let intervals = bootstrap_roc(scores, optimal.threshold, &config.bootstrap)?;
    let positives = scores.iter().filter(|s| s.positive).count();
    Ok(CurveReport {
        positives,
        negatives: scores.len() - positives,
        auc: curve.auc,
        optimal,
        intervals,
        roc: curve,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub pairs: usize,
    pub class_counts: BTreeMap<&'static str, usize>,
    pub config: EvaluationConfig,
    /// Copy-pasta (positive) against rewording (negative), per algorithm tag.
    pub grapheme: BTreeMap<String, CurveReport>,
    /// Any match (positive) against control (negative).
    pub semantic: Option<CurveReport>,
    /// Full classifier at the configured thresholds.
    pub confusion: Option<ConfusionReport>,
    pub warnings: Vec<String>,
}

/// Runs the grapheme comparison, the semantic ROC and the four-way confusion
/// matrix. Parts whose inputs are absent are skipped with a warning.
pub fn evaluate(
    set: &LabeledSet,
    store: Option<&EmbeddingStore>,
    config: &EvaluationConfig,
) -> Result<EvaluationReport, EvalError> {
    let mut warnings = set.warnings.clone();
    let pairs = &set.pairs;
    let counts = set.counts();

    let mut grapheme = BTreeMap::new();
    if counts["copy_pasta"] > 0 && counts["rewording"] > 0 {
        for &alg in &config.algorithms {
            let scores = match grapheme_scores(pairs, alg, &[Label::CopyPasta], &[Label::Rewording]) {
                Ok(scores) => scores,
                Err(EvalError::Distance {
                    pair,
                    source: source @ DistanceError::InsufficientBigrams { .. },
                }) => {
                    warnings.push(format!("{alg} skipped: pair {pair}: {source}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            grapheme.insert(alg.tag().to_string(), curve_report(&scores, config)?);
        }
    } else {
        warnings.push("grapheme comparison skipped: needs copy_pasta and rewording pairs".into());
    }

    let has_embeddings = store.is_some() || pairs.iter().any(|p| p.embedding_a.is_some() || p.embedding_b.is_some());
    let (semantic, confusion_report) = if pairs.is_empty() {
        (None, None)
    } else if has_embeddings {
        let scores = semantic_scores(pairs, store)?;
        let semantic = if counts["control"] > 0 && counts["control"] < pairs.len() {
            Some(curve_report(&scores, config)?)
        } else {
            warnings.push("semantic ROC skipped: needs control and matching pairs".into());
            None
        };
        let verdicts = classify_labeled(pairs, store, &config.thresholds)?;
        (semantic, Some(confusion(&verdicts, pairs)?.report()))
    } else {
        warnings.push("semantic ROC and confusion matrix skipped: no embeddings".into());
        (None, None)
    };

    Ok(EvaluationReport {
        pairs: pairs.len(),
        class_counts: counts,
        config: config.clone(),
        grapheme,
        semantic,
        confusion: confusion_report,
        warnings,
    })
}
