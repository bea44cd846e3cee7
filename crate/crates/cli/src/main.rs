use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Debug, Parser)]
#[command(
    name = "copypasta",
    version,
    about = "Find copy-pasted, reworded and translated messages across accounts"
)]
struct Cli {
    /// JSON settings file; explicit flags take precedence over it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize a raw export, drop retweets and short messages, tag languages.
    Preprocess(commands::preprocess::Args),
    /// Fetch message embeddings from an HTTP service.
    Embed(commands::embed::Args),
    /// Label every cross-account pair of a corpus.
    Classify(commands::classify::Args),
    /// Build, summarize and export the duplication graph.
    Graph(commands::graph::Args),
    /// ROC, bootstrap and confusion-matrix report on labeled pairs.
    Eval(commands::eval::Args),
    /// Time the grapheme measures on all pairs of a corpus.
    Bench(commands::bench::Args),
    /// Write a synthetic corpus with known duplicates.
    Synth(commands::synth::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config::Settings::load(cli.config.as_deref()).and_then(|settings| match cli.command {
        Command::Preprocess(args) => commands::preprocess::run(args, settings),
        Command::Embed(args) => commands::embed::run(args, settings),
        Command::Classify(args) => commands::classify::run(args, settings),
        Command::Graph(args) => commands::graph::run(args, settings),
        Command::Eval(args) => commands::eval::run(args, settings),
        Command::Bench(args) => commands::bench::run(args, settings),
        Command::Synth(args) => commands::synth::run(args, settings),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
