use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roc::{auc_from_groups, BinaryCounts, Grouped, Score};
use super::EvalError;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_211_202;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub n_resamples: usize,
    pub level: f64,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            n_resamples: 10_000,
            level: 0.95,
            seed: DEFAULT_SEED,
        }
    }
}

impl BootstrapConfig {
    fn validate(&self) -> Result<(), EvalError> {
        if self.n_resamples == 0 || !(self.level > 0.0 && self.level < 1.0) {
            return Err(EvalError::Bootstrap {
                n_resamples: self.n_resamples,
                level: self.level,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Independent stream per resample, so results do not depend on scheduling.
fn resample_rng(seed: u64, resample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(resample as u64);
    rng
}

/// Linear interpolation between order statistics of sorted `xs`.
fn quantile(xs: &[f64], q: f64) -> f64 {
    let pos = q * (xs.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    if i + 1 < xs.len() {
        xs[i] + (xs[i + 1] - xs[i]) * frac
    } else {
        xs[i]
    }
}

/// Percentile interval of `stats`, widened when needed so it holds `estimate`.
fn percentile_interval(mut stats: Vec<f64>, level: f64, estimate: f64) -> Interval {
    stats.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    Interval {
        estimate,
        lo: quantile(&stats, tail).min(estimate),
        hi: quantile(&stats, 1.0 - tail).max(estimate),
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Percentile bootstrap interval of `statistic` over resamples of `samples`.
pub fn bootstrap_ci<F>(samples: &[f64], config: &BootstrapConfig, statistic: F) -> Result<Interval, EvalError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    if samples.is_empty() {
        return Err(EvalError::Empty);
    }
    let n = samples.len();
    let stats: Vec<f64> = (0..config.n_resamples)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |buf, r| {
                let mut rng = resample_rng(config.seed, r);
                buf.clear();
                buf.extend((0..n).map(|_| samples[rng.random_range(0..n)]));
                statistic(buf)
            },
        )
        .collect();
    Ok(percentile_interval(stats, config.level, statistic(samples)))
}

/// Bootstrap intervals of ROC-derived figures at one fixed threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocIntervals {
    pub threshold: f64,
    pub auc: Interval,
    pub tpr: Interval,
    pub fpr: Interval,
    pub j: Interval,
    pub precision: Interval,
    pub recall: Interval,
    /// Resamples drawn with a single class, which have no ROC and are skipped.
    pub degenerate_resamples: usize,
}

/// Resamples scored pairs with replacement and recomputes AUC and the
/// threshold metrics. Items are drawn as multiplicities over a single sort.
pub fn bootstrap_roc(scores: &[Score], threshold: f64, config: &BootstrapConfig) -> Result<RocIntervals, EvalError> {
    config.validate()?;
    let grouped = Grouped::new(scores)?;
    let n = scores.len();
    let below: Vec<bool> = scores.iter().map(|s| s.distance < threshold).collect();

    let metrics = |weights: Option<&[u32]>| -> Option<[f64; 6]> {
        let auc = auc_from_groups(&grouped.group_weights(weights))?;
        let mut c = BinaryCounts::default();
        for i in 0..n {
            let w = weights.map_or(1, |w| w[i] as u64);
            match (below[i], scores[i].positive) {
                (true, true) => c.tp += w,
                (true, false) => c.fp += w,
                (false, false) => c.tn += w,
                (false, true) => c.fn_ += w,
            }
        }
        Some([auc, c.tpr(), c.fpr(), c.youden_j(), c.precision(), c.recall()])
    };

    let resampled: Vec<Option<[f64; 6]>> = (0..config.n_resamples)
        .into_par_iter()
        .map_init(
            || vec![0u32; n],
            |weights, r| {
                let mut rng = resample_rng(config.seed, r);
                weights.fill(0);
                for _ in 0..n {
                    weights[rng.random_range(0..n)] += 1;
                }
                metrics(Some(weights))
            },
        )
        .collect();
    let degenerate_resamples = resampled.iter().filter(|m| m.is_none()).count();
    let valid: Vec<[f64; 6]> = resampled.into_iter().flatten().collect();
    if valid.is_empty() {
        return Err(EvalError::SingleClass {
            positives: 0,
            negatives: 0,
        });
    }
    let point = metrics(None).expect("both classes present");
    let interval = |k: usize| percentile_interval(valid.iter().map(|m| m[k]).collect(), config.level, point[k]);
    Ok(RocIntervals {
        threshold,
        auc: interval(0),
        tpr: interval(1),
        fpr: interval(2),
        j: interval(3),
        precision: interval(4),
        recall: interval(5),
        degenerate_resamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::roc::{roc, Resolution};

    fn config(n_resamples: usize, seed: u64) -> BootstrapConfig {
        BootstrapConfig {
            n_resamples,
            level: 0.95,
            seed,
        }
    }

    #[test]
    fn constant_samples() {
        let iv = bootstrap_ci(&[0.5; 40], &config(500, 1), mean).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.5, 0.5));
    }

    #[test]
    fn reproducible() {
        let xs: Vec<f64> = (0..200).map(|i| (i as f64 * 0.37).sin()).collect();
        let a = bootstrap_ci(&xs, &config(2_000, 9), mean).unwrap();
        let b = bootstrap_ci(&xs, &config(2_000, 9), mean).unwrap();
        assert_eq!(a, b);
        let c = bootstrap_ci(&xs, &config(2_000, 10), mean).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn single_resample_contains_estimate() {
        let xs = [1.0, 2.0, 3.0, 10.0];
        let iv = bootstrap_ci(&xs, &config(1, 3), mean).unwrap();
        assert!(iv.contains(mean(&xs)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(bootstrap_ci(&[], &config(10, 1), mean), Err(EvalError::Empty)));
        assert!(bootstrap_ci(&[1.0], &config(0, 1), mean).is_err());
        let bad_level = BootstrapConfig {
            level: 1.0,
            ..config(10, 1)
        };
        assert!(bootstrap_ci(&[1.0], &bad_level, mean).is_err());
    }

    #[test]
    fn quantile_interpolates() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&xs, 0.5), 2.0);
        assert_eq!(quantile(&xs, 0.125), 0.5);
        assert_eq!(quantile(&xs, 1.0), 4.0);
    }

    #[test]
    fn roc_intervals_bracket_point_values() {
        let scores: Vec<Score> = (0..300)
            .map(|i| {
                let positive = i % 2 == 0;
                let d = if positive { 0.2 } else { 0.6 } + ((i * 7919) % 100) as f64 / 250.0;
                Score::new(d, positive)
            })
            .collect();
        let curve = roc(&scores, Resolution::Unique).unwrap();
        let iv = bootstrap_roc(&scores, 0.5, &config(1_000, 5)).unwrap();
        assert!(iv.auc.contains(curve.auc));
        assert!((iv.auc.estimate - curve.auc).abs() < 1e-12);
        let direct = BinaryCounts::at(&scores, 0.5);
        assert!((iv.tpr.estimate - direct.tpr()).abs() < 1e-12);
        assert!(iv.tpr.lo < iv.tpr.hi);
        assert_eq!(iv, bootstrap_roc(&scores, 0.5, &config(1_000, 5)).unwrap());
    }
}
