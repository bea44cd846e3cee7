use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;

use copypasta_core::eval::{evaluate, load_labeled_pairs, BootstrapConfig, EvaluationConfig, Resolution};
use copypasta_core::{EmbeddingStore, GraphemeAlgorithm};

use super::{parse_algorithm, set};
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Labeled pairs (JSONL with text_a, text_b, lang_a, lang_b, truth).
    #[arg(long)]
    pairs: PathBuf,
    /// Embeddings keyed by message id, for pairs without inline vectors.
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated grapheme measures to compare.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algorithms: Option<Vec<GraphemeAlgorithm>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    resamples: Option<usize>,
    /// Confidence level of the bootstrap intervals.
    #[arg(long)]
    level: Option<f64>,
    /// Drop pairs with a side shorter than this many letters (no filter by default).
    #[arg(long)]
    min_letters: Option<usize>,
    /// Evaluate the ROC on this many evenly spaced thresholds instead of every distinct score.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tau_p: Option<f64>,
    #[arg(long)]
    tau_s: Option<f64>,
    #[arg(long)]
    tau_l: Option<f64>,
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    if let Some(n) = args.min_letters {
        settings.min_letters = n;
        settings.filter_labeled_pairs = true;
    }
    set(&mut settings.algorithms, args.algorithms);
    set(&mut settings.seed, args.seed);
    set(&mut settings.bootstrap_resamples, args.resamples);
    set(&mut settings.confidence_level, args.level);
    set(&mut settings.thresholds.tau_p, args.tau_p);
    set(&mut settings.thresholds.tau_s, args.tau_s);
    set(&mut settings.thresholds.tau_l, args.tau_l);
    let settings = settings.resolve();

    let labeled = load_labeled_pairs(
        &args.pairs,
        settings.filter_labeled_pairs.then_some(settings.min_letters),
    )
    .with_context(|| format!("loading labeled pairs {}", args.pairs.display()))?;
    let store = args
        .embeddings
        .as_deref()
        .map(|p| EmbeddingStore::load(p).with_context(|| format!("loading embeddings {}", p.display())))
        .transpose()?;
    let config = EvaluationConfig {
        algorithms: settings.algorithms.clone(),
        thresholds: settings.thresholds,
        bootstrap: BootstrapConfig {
            n_resamples: settings.bootstrap_resamples,
            level: settings.confidence_level,
            seed: settings.seed,
        },
        resolution: args.grid.map_or(Resolution::Unique, Resolution::Grid),
    };
    let report = evaluate(&labeled, store.as_ref(), &config)?;

    output::ensure_dir(&args.out)?;
    output::write_json(&args.out.join("evaluation.json"), &report)?;
    let mut inputs = BTreeMap::from([("pairs", args.pairs.as_path())]);
    if let Some(p) = &args.embeddings {
        inputs.insert("embeddings", p);
    }
    RunConfig {
        command: "eval",
        inputs,
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;

    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for (tag, curve) in &report.grapheme {
        eprintln!(
            "{tag:>4}: AUC {:.4}, best threshold {:.3} (J = {:.3})",
            curve.auc, curve.optimal.threshold, curve.optimal.j
        );
    }
    if let Some(c) = &report.confusion {
        eprintln!(
            "confusion: micro precision {:.4}, macro precision {:.4}",
            c.micro.precision, c.macro_average.precision
        );
    }
    Ok(())
}
