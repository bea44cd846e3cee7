use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;

use copypasta_core::corpus::{self, InputFormat, StageReport};
use copypasta_core::language::{label_languages, CommandIdentifier, HttpIdentifier, LanguageReport, LanguageSource};

use super::set;
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

impl From<Format> for InputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Jsonl => InputFormat::Jsonl,
            Format::Csv => InputFormat::Csv,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Raw message export.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    #[arg(long)]
    out: PathBuf,
    /// Drop messages with fewer letters than this.
    #[arg(long)]
    min_letters: Option<usize>,
    /// Language identifier command (JSONL on stdin and stdout).
    #[arg(long, conflicts_with = "lang_url")]
    lang_tool: Option<String>,
    /// Language identifier HTTP endpoint.
    #[arg(long)]
    lang_url: Option<String>,
}

#[derive(Serialize)]
struct Stages {
    #[serde(flatten)]
    stages: StageReport,
    languages: LanguageReport,
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    set(&mut settings.min_letters, args.min_letters);
    if args.lang_tool.is_some() {
        settings.language_tool = args.lang_tool;
        settings.language_url = None;
    } else if args.lang_url.is_some() {
        settings.language_url = args.lang_url;
        settings.language_tool = None;
    }
    let settings = settings.resolve();

    let raw =
        corpus::ingest(&args.input, args.format.into()).with_context(|| format!("reading {}", args.input.display()))?;
    let (clean, stages) = corpus::preprocess(raw, settings.min_letters);

    let command_tool;
    let http_tool;
    let source = if let Some(line) = &settings.language_tool {
        command_tool = CommandIdentifier::from_command_line(line).context("empty --lang-tool command")?;
        LanguageSource::External {
            tool: &command_tool,
            batch_size: 500,
            concurrency: settings.workers,
        }
    } else if let Some(url) = &settings.language_url {
        http_tool = HttpIdentifier {
            url: url.clone(),
            timeout: Duration::from_secs(60),
        };
        LanguageSource::External {
            tool: &http_tool,
            batch_size: 500,
            concurrency: settings.workers,
        }
    } else {
        LanguageSource::Provided
    };
    let (clean, languages) = label_languages(clean, source);

    output::ensure_dir(&args.out)?;
    clean.write_jsonl(&args.out.join("corpus.jsonl"))?;
    output::write_json(&args.out.join("stages.json"), &Stages { stages, languages })?;
    RunConfig {
        command: "preprocess",
        inputs: BTreeMap::from([("input", args.input.as_path())]),
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;

    eprintln!(
        "{} messages from {} accounts kept ({} read)",
        stages.after_length_filter.messages, stages.after_length_filter.users, stages.whole.messages
    );
    Ok(())
}
