use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::Context;
use clap::ValueEnum;

use copypasta_core::semantic::{fetch_embeddings, HttpProvider};

use super::{read_corpus, set};
use crate::config::{RunConfig, Settings, TOKEN_ENV};
use crate::output;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StoreFormat {
    Bin,
    Jsonl,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Embedding endpoint accepting `{"input": [..], "model": ..}`.
    #[arg(long)]
    url: Option<String>,
    #[arg(long)]
    model: Option<String>,
    /// JSONL cache reused across runs.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long, value_enum, default_value = "bin")]
    store_format: StoreFormat,
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    let emb = &mut settings.embedding;
    if args.url.is_some() {
        emb.url = args.url;
    }
    if args.cache.is_some() {
        emb.cache = args.cache;
    }
    set(&mut emb.model, args.model);
    set(&mut emb.fetch.batch_size, args.batch_size);
    let settings = settings.resolve();
    let emb = &settings.embedding;

    let url = emb
        .url
        .clone()
        .context("no embedding endpoint: pass --url or set embedding.url in the config")?;
    let provider = HttpProvider {
        url,
        model: emb.model.clone(),
        token: std::env::var(TOKEN_ENV).ok().filter(|t| !t.is_empty()),
        timeout: Duration::from_secs(emb.timeout_secs),
    };

    let corpus = read_corpus(&args.corpus)?;
    let items: Vec<(String, String)> = corpus
        .messages()
        .iter()
        .map(|m| (m.id.clone(), m.semantic_text.clone()))
        .collect();
    let (store, stats) = fetch_embeddings(&items, &provider, &emb.fetch, emb.cache.as_deref())?;

    output::ensure_dir(&args.out)?;
    let path = match args.store_format {
        StoreFormat::Bin => args.out.join("embeddings.bin"),
        StoreFormat::Jsonl => args.out.join("embeddings.jsonl"),
    };
    match args.store_format {
        StoreFormat::Bin => store.write_binary(&path)?,
        StoreFormat::Jsonl => store.write_jsonl(&path)?,
    }
    output::write_json(&args.out.join("fetch_stats.json"), &stats)?;
    RunConfig {
        command: "embed",
        inputs: BTreeMap::from([("corpus", args.corpus.as_path())]),
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;
    eprintln!(
        "{} embeddings written to {} ({} from cache, {} requests)",
        store.len(),
        path.display(),
        stats.cache_hits,
        stats.requests
    );
    Ok(())
}
