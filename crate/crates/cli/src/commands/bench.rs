use std::collections::BTreeMap;
use std::path::PathBuf;

use copypasta_core::eval::bench_grapheme;
use copypasta_core::{Corpus, GraphemeAlgorithm};

use super::{parse_algorithm, read_corpus, set};
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algorithms: Option<Vec<GraphemeAlgorithm>>,
    /// Use only the first N messages.
    #[arg(long)]
    limit: Option<usize>,
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    set(&mut settings.algorithms, args.algorithms);
    let settings = settings.resolve();

    let mut corpus = read_corpus(&args.corpus)?;
    if let Some(n) = args.limit {
        let messages: Vec<_> = corpus.into_messages().into_iter().take(n).collect();
        corpus = Corpus::from_messages(messages)?;
    }
    let report = bench_grapheme(&corpus, &settings.algorithms);

    output::ensure_dir(&args.out)?;
    output::write_json(&args.out.join("bench.json"), &report)?;
    RunConfig {
        command: "bench",
        inputs: BTreeMap::from([("corpus", args.corpus.as_path())]),
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;
    eprintln!("{} messages, {} cross-account pairs", report.messages, report.pairs);
    for (tag, t) in &report.algorithms {
        eprintln!("{tag:>4}: {:9.3} s ({:.3e} s/pair)", t.wall_seconds, t.per_pair_seconds);
    }
    Ok(())
}
