use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;
use clap::ValueEnum;

use copypasta_core::classifier::write_verdicts;
use copypasta_core::{classify_corpus, ClassifyOptions, EmbeddingStore, GraphemeAlgorithm, Thresholds};

use super::{enable, parse_algorithm, read_corpus, set};
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// Built-in defaults.
    Default,
    /// Tighter semantic threshold for precision on real data.
    Conservative,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    corpus: PathBuf,
    /// Embedding store (binary or JSONL) covering every corpus message.
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Starting point for thresholds; individual --tau-* flags apply on top.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long)]
    tau_p: Option<f64>,
    #[arg(long)]
    tau_s: Option<f64>,
    #[arg(long)]
    tau_l: Option<f64>,
    /// Grapheme measure: lv, ro, gz, bg_w or bg_l.
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<GraphemeAlgorithm>,
    /// Pair-processing threads (0 = all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Also write NoMatch verdicts.
    #[arg(long)]
    emit_nomatch: bool,
    /// Only call a pair copy-pasta when it is also semantically close.
    #[arg(long)]
    require_semantic_for_copypasta: bool,
    /// Compute every grapheme distance instead of skipping pairs by length.
    #[arg(long)]
    no_prune: bool,
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    match args.preset {
        Some(Preset::Default) => settings.thresholds = Thresholds::default(),
        Some(Preset::Conservative) => settings.thresholds = Thresholds::conservative(),
        None => {}
    }
    let t = &mut settings.thresholds;
    set(&mut t.tau_p, args.tau_p);
    set(&mut t.tau_s, args.tau_s);
    set(&mut t.tau_l, args.tau_l);
    set(&mut t.grapheme_algorithm, args.algorithm);
    set(&mut settings.workers, args.workers);
    enable(&mut settings.emit_nomatch, args.emit_nomatch);
    enable(
        &mut settings.require_semantic_for_copypasta,
        args.require_semantic_for_copypasta,
    );
    if args.no_prune {
        settings.prune = false;
    }
    let settings = settings.resolve();

    let corpus = read_corpus(&args.corpus)?;
    let store = EmbeddingStore::load(&args.embeddings)
        .with_context(|| format!("loading embeddings {}", args.embeddings.display()))?;
    let options = ClassifyOptions {
        prune: settings.prune,
        require_semantic_for_copypasta: settings.require_semantic_for_copypasta,
        emit_nomatch: settings.emit_nomatch,
        workers: settings.workers,
    };
    let result = classify_corpus(&corpus, &store, &settings.thresholds, &options)?;

    output::ensure_dir(&args.out)?;
    write_verdicts(&args.out.join("verdicts.jsonl"), &result.verdicts)?;
    output::write_json(&args.out.join("stats.json"), &result.stats)?;
    RunConfig {
        command: "classify",
        inputs: BTreeMap::from([
            ("corpus", args.corpus.as_path()),
            ("embeddings", args.embeddings.as_path()),
        ]),
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;

    let s = &result.stats;
    eprintln!(
        "{} pairs: {} copy-pasta, {} rewording, {} translation ({} pruned by length)",
        s.evaluated, s.copy_pasta, s.rewording, s.translation, s.pruned
    );
    Ok(())
}
