use serde::{Deserialize, Serialize};

use super::EvalError;

/// One scored pair: a distance and whether the pair is a true positive case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub distance: f64,
    pub positive: bool,
}

impl Score {
    pub fn new(distance: f64, positive: bool) -> Self {
        Score { distance, positive }
    }
}

/// Binary outcome counts at one threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl BinaryCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn tpr(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn fpr(&self) -> f64 {
        ratio(self.fp, self.fp + self.tn)
    }

    pub fn tnr(&self) -> f64 {
        ratio(self.tn, self.tn + self.fp)
    }

    /// Youden's J: TPR + TNR − 1.
    pub fn youden_j(&self) -> f64 {
        self.tpr() + self.tnr() - 1.0
    }

    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        self.tpr()
    }

    /// Counts when pairs with `distance < threshold` are predicted positive.
    pub fn at(scores: &[Score], threshold: f64) -> Self {
        let mut c = BinaryCounts::default();
        for s in scores {
            match (s.distance < threshold, s.positive) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, false) => c.tn += 1,
                (false, true) => c.fn_ += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub threshold: f64,
    pub tpr: f64,
    pub fpr: f64,
    #[serde(flatten)]
    pub counts: BinaryCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    /// Ascending threshold, so TPR and FPR are non-decreasing.
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// Threshold placement for the sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// Midpoints between consecutive distinct scores, plus one threshold
    /// at the minimum and one above the maximum.
    #[default]
    Unique,
    /// This many evenly spaced thresholds from the minimum score to just
    /// above the maximum.
    Grid(usize),
}

/// Scores sorted by distance with runs of equal distance merged.
#[derive(Debug, Clone)]
pub(crate) struct Grouped {
    /// `(distance, item indices)` ascending.
    pub groups: Vec<(f64, Vec<usize>)>,
    pub positive: Vec<bool>,
}

impl Grouped {
    pub fn new(scores: &[Score]) -> Result<Self, EvalError> {
        if let Some(s) = scores.iter().find(|s| !s.distance.is_finite()) {
            return Err(EvalError::NonFinite(s.distance));
        }
        let positives = scores.iter().filter(|s| s.positive).count();
        if positives == 0 || positives == scores.len() {
            return Err(EvalError::SingleClass {
                positives,
                negatives: scores.len() - positives,
            });
        }
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[a].distance.total_cmp(&scores[b].distance));
        let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
        for i in order {
            let d = scores[i].distance;
            match groups.last_mut() {
                Some((g, members)) if *g == d => members.push(i),
                _ => groups.push((d, vec![i])),
            }
        }
        Ok(Grouped {
            groups,
            positive: scores.iter().map(|s| s.positive).collect(),
        })
    }

    /// Positive and negative weight per group.
    pub fn group_weights(&self, weights: Option<&[u32]>) -> Vec<(u64, u64)> {
        self.groups
            .iter()
            .map(|(_, members)| {
                members.iter().fold((0, 0), |(p, n), &i| {
                    let w = weights.map_or(1, |w| w[i] as u64);
                    if self.positive[i] {
                        (p + w, n)
                    } else {
                        (p, n + w)
                    }
                })
            })
            .collect()
    }
}

/// Trapezoidal AUC from per-group (positive, negative) weights in ascending
/// distance order. `None` when one class has zero weight.
pub(crate) fn auc_from_groups(groups: &[(u64, u64)]) -> Option<f64> {
    let (p_total, n_total) = groups.iter().fold((0, 0), |(p, n), &(gp, gn)| (p + gp, n + gn));
    if p_total == 0 || n_total == 0 {
        return None;
    }
    // Each group is one step of the curve; ties contribute half.
    let mut area = 0.0;
    let mut tp = 0u64;
    for &(gp, gn) in groups {
        area += gn as f64 * (tp as f64 + gp as f64 / 2.0);
        tp += gp;
    }
    Some(area / (p_total as f64 * n_total as f64))
}

fn trapezoid(points: &[RocPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) / 2.0)
        .sum()
}

/// ROC sweep where pairs with `distance < threshold` count as predicted positive.
pub fn roc(scores: &[Score], resolution: Resolution) -> Result<RocCurve, EvalError> {
    let grouped = Grouped::new(scores)?;
    let weights = grouped.group_weights(None);
    let (p_total, n_total) = weights.iter().fold((0, 0), |(p, n), &(gp, gn)| (p + gp, n + gn));
    let distances: Vec<f64> = grouped.groups.iter().map(|(d, _)| *d).collect();
    let (lo, hi) = (distances[0], distances[distances.len() - 1]);
    let above = hi + 1.0;

    let thresholds: Vec<f64> = match resolution {
        Resolution::Unique => std::iter::once(lo)
            .chain(distances.windows(2).map(|w| w[0] + (w[1] - w[0]) / 2.0))
            .chain(std::iter::once(above))
            .collect(),
        Resolution::Grid(n) => {
            let n = n.max(2);
            let mut t: Vec<f64> = (0..n - 1)
                .map(|j| lo + (hi - lo) * j as f64 / (n - 2).max(1) as f64)
                .collect();
            t.push(above);
            t.dedup();
            t
        }
    };

    // Cumulative counts strictly below each threshold.
    let mut points = Vec::with_capacity(thresholds.len());
    let (mut g, mut tp, mut fp) = (0usize, 0u64, 0u64);
    for threshold in thresholds {
        while g < distances.len() && distances[g] < threshold {
            tp += weights[g].0;
            fp += weights[g].1;
            g += 1;
        }
        let counts = BinaryCounts {
            tp,
            fp,
            tn: n_total - fp,
            fn_: p_total - tp,
        };
        points.push(RocPoint {
            threshold,
            tpr: counts.tpr(),
            fpr: counts.fpr(),
            counts,
        });
    }
    let auc = match resolution {
        Resolution::Unique => auc_from_groups(&weights).expect("both classes present"),
        Resolution::Grid(_) => trapezoid(&points),
    };
    Ok(RocCurve { points, auc })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YoudenPoint {
    pub threshold: f64,
    pub j: f64,
    #[serde(flatten)]
    pub counts: BinaryCounts,
}

/// Threshold with the largest J; the smallest such threshold on ties.
pub fn youden_optimal(curve: &RocCurve) -> YoudenPoint {
    let mut best: Option<YoudenPoint> = None;
    for p in &curve.points {
        let j = p.counts.youden_j();
        if best.map_or(true, |b| j > b.j) {
            best = Some(YoudenPoint {
                threshold: p.threshold,
                j,
                counts: p.counts,
            });
        }
    }
    best.expect("a curve has at least two points")
}
