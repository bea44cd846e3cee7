use std::collections::BTreeMap;
use std::path::PathBuf;

use copypasta_core::eval::{class_name, LabeledPair, LabeledRecord};
use copypasta_core::synth::{generate, threshold_fixture, SynthConfig};

use super::set;
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    out: PathBuf,
    /// Generator seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Seed messages; each gets copy-pasta, rewording and translation variants.
    #[arg(long)]
    seeds: Option<usize>,
    /// Variants per seed and method.
    #[arg(long)]
    variants: Option<usize>,
    /// Unrelated control pairs.
    #[arg(long)]
    controls: Option<usize>,
    /// Embedding dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Pairs per class in the threshold-calibration set.
    #[arg(long, default_value_t = 500)]
    threshold_pairs: usize,
}

fn record(p: &LabeledPair) -> LabeledRecord {
    LabeledRecord {
        id: Some(p.id.clone()),
        id_a: None,
        id_b: None,
        text_a: p.a.raw_text.clone(),
        text_b: p.b.raw_text.clone(),
        lang_a: p.a.language.as_str().to_string(),
        lang_b: p.b.language.as_str().to_string(),
        truth: class_name(p.truth).to_string(),
        embedding_a: None,
        embedding_b: None,
    }
}

pub fn run(args: Args, settings: Settings) -> anyhow::Result<()> {
    let settings = settings.resolve();
    let mut config = SynthConfig::default();
    set(&mut config.rng_seed, args.seed);
    set(&mut config.seeds, args.seeds);
    set(&mut config.variants, args.variants);
    set(&mut config.controls, args.controls);
    set(&mut config.dim, args.dim);

    let fixture = generate(&config);
    let calibration = threshold_fixture(args.threshold_pairs, (0.05, 0.25), (0.40, 0.90), config.rng_seed);

    output::ensure_dir(&args.out)?;
    fixture.corpus.write_jsonl(&args.out.join("corpus.jsonl"))?;
    fixture.embeddings.write_binary(&args.out.join("embeddings.bin"))?;
    output::write_jsonl(&args.out.join("labeled.jsonl"), fixture.records())?;
    output::write_jsonl(&args.out.join("threshold_pairs.jsonl"), calibration.iter().map(record))?;
    output::write_json(&args.out.join("synth_config.json"), &config)?;
    RunConfig {
        command: "synth",
        inputs: BTreeMap::new(),
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;
    eprintln!(
        "{} messages, {} labeled pairs, {} calibration pairs",
        fixture.corpus.len(),
        fixture.pairs.len(),
        calibration.len()
    );
    Ok(())
}
