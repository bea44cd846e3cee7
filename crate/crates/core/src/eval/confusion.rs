use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::labeled::LabeledPair;
use super::EvalError;
use crate::classifier::{Label, PairVerdict};

/// Row and column order of the matrix: control first.
pub const CLASS_ORDER: [Label; 4] = [Label::NoMatch, Label::CopyPasta, Label::Rewording, Label::Translation];

/// Name used for a class in reports; `NoMatch` is reported as "control".
pub fn class_name(label: Label) -> &'static str {
    match label {
        Label::NoMatch => "control",
        other => other.as_str(),
    }
}

fn class_index(label: Label) -> usize {
    CLASS_ORDER
        .iter()
        .position(|&l| l == label)
        .expect("every label has a row")
}

/// Rows are ground truth, columns predictions, both in [`CLASS_ORDER`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 4]; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub support: u64,
    /// Share of this class's pairs that received the right label.
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Averages {
    pub precision: f64,
    pub recall: f64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl ConfusionMatrix {
    pub fn add(&mut self, truth: Label, predicted: Label) {
        self.counts[class_index(truth)][class_index(predicted)] += 1;
    }

    pub fn get(&self, truth: Label, predicted: Label) -> u64 {
        self.counts[class_index(truth)][class_index(predicted)]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn class(&self, label: Label) -> ClassMetrics {
        let k = class_index(label);
        let support: u64 = self.counts[k].iter().sum();
        let predicted: u64 = self.counts.iter().map(|row| row[k]).sum();
        let hit = self.counts[k][k];
        ClassMetrics {
            support,
            accuracy: ratio(hit, support),
            precision: ratio(hit, predicted),
            recall: ratio(hit, support),
        }
    }

    /// Pooled over classes; for single-label data both equal overall accuracy.
    pub fn micro(&self) -> Averages {
        let hits: u64 = (0..4).map(|k| self.counts[k][k]).sum();
        let a = ratio(hits, self.total());
        Averages {
            precision: a,
            recall: a,
        }
    }

    /// Unweighted mean over classes that occur in truth or prediction.
    pub fn macro_average(&self) -> Averages {
        let present: Vec<ClassMetrics> = CLASS_ORDER
            .iter()
            .map(|&l| self.class(l))
            .zip(0..4)
            .filter(|(m, k)| m.support > 0 || self.counts.iter().any(|row| row[*k] > 0))
            .map(|(m, _)| m)
            .collect();
        let n = present.len().max(1) as f64;
        Averages {
            precision: present.iter().map(|m| m.precision).sum::<f64>() / n,
            recall: present.iter().map(|m| m.recall).sum::<f64>() / n,
        }
    }

    pub fn report(&self) -> ConfusionReport {
        ConfusionReport {
            classes: CLASS_ORDER.map(class_name),
            matrix: self.counts,
            total: self.total(),
            per_class: CLASS_ORDER.iter().map(|&l| (class_name(l), self.class(l))).collect(),
            micro: self.micro(),
            macro_average: self.macro_average(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionReport {
    pub classes: [&'static str; 4],
    pub matrix: [[u64; 4]; 4],
    pub total: u64,
    pub per_class: BTreeMap<&'static str, ClassMetrics>,
    pub micro: Averages,
    #[serde(rename = "macro")]
    pub macro_average: Averages,
}

/// Crosses verdicts with ground truth. A verdict whose pair has no truth is an
/// error; a truth pair without a verdict counts as predicted `NoMatch`, since
/// non-matches are usually not materialized.
pub fn confusion(verdicts: &[PairVerdict], truth: &[LabeledPair]) -> Result<ConfusionMatrix, EvalError> {
    let truth_of: HashMap<_, Label> = truth.iter().map(|p| (p.key(), p.truth)).collect();
    let mut predicted: HashMap<_, Label> = HashMap::with_capacity(verdicts.len());
    for v in verdicts {
        if !truth_of.contains_key(&v.pair) {
            return Err(EvalError::UnmatchedPair(v.pair.clone()));
        }
        predicted.insert(&v.pair, v.label);
    }
    let mut m = ConfusionMatrix::default();
    for p in truth {
        let key = p.key();
        m.add(p.truth, predicted.get(&key).copied().unwrap_or(Label::NoMatch));
    }
    Ok(m)
}
