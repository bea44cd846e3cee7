use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use copypasta_core::classifier::read_verdicts;
use copypasta_core::graph::{
    self, component_report, export, label_themes, sunburst, AccountLinkage, ComponentSummary, ExportFormat, GraphRef,
};
use copypasta_core::{build_message_graph, connected_components, ThemeMap};

use super::{enable, read_corpus};
use crate::config::{RunConfig, Settings};
use crate::output;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Verdict JSONL written by `classify`.
    #[arg(long)]
    verdicts: PathBuf,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Theme keyword map (JSON object of theme -> keywords); built-in lists otherwise.
    #[arg(long)]
    themes: Option<PathBuf>,
    /// Also build the account graph, method mix and sunburst data.
    #[arg(long)]
    project_accounts: bool,
    /// Link accounts that post into the same component, not only direct pairs.
    #[arg(long)]
    component_account_linkage: bool,
}

#[derive(Serialize)]
struct ComponentEntry<'a> {
    id: usize,
    nodes: &'a [String],
    #[serde(flatten)]
    summary: ComponentSummary,
}

#[derive(Serialize)]
struct ThemeReport<'a> {
    labeled_share: f64,
    corpus: BTreeMap<&'a str, usize>,
    graph_nodes: BTreeMap<&'a str, usize>,
}

fn export_all(graph: GraphRef<'_>, dir: &Path, stem: &str) -> anyhow::Result<()> {
    for format in ExportFormat::ALL {
        let path = dir.join(format!("{stem}.{}", format.extension()));
        export(graph, format, &path).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn run(args: Args, mut settings: Settings) -> anyhow::Result<()> {
    if args.themes.is_some() {
        settings.theme_map = args.themes;
    }
    enable(&mut settings.project_accounts, args.project_accounts);
    enable(&mut settings.component_account_linkage, args.component_account_linkage);
    let settings = settings.resolve();

    let corpus = read_corpus(&args.corpus)?;
    let verdicts = read_verdicts(&args.verdicts)?;
    let themes = match &settings.theme_map {
        Some(path) => ThemeMap::load(path).with_context(|| format!("loading themes {}", path.display()))?,
        None => ThemeMap::builtin(),
    };
    let labels = label_themes(&corpus, &themes);

    let mut g = build_message_graph(&verdicts);
    g.annotate(&corpus, Some(&labels))?;
    let components = connected_components(&g, None);
    let summaries = component_report(&g, &corpus)?;

    output::ensure_dir(&args.out)?;
    export_all(GraphRef::from(&g), &args.out, "messages")?;
    let entries: Vec<ComponentEntry> = components
        .iter()
        .zip(summaries)
        .enumerate()
        .map(|(id, (c, summary))| ComponentEntry {
            id,
            nodes: &c.nodes,
            summary,
        })
        .collect();
    output::write_json(&args.out.join("components.json"), &entries)?;

    let mut graph_nodes = BTreeMap::new();
    for (id, _) in g.nodes() {
        *graph_nodes
            .entry(labels.theme_of(id).unwrap_or(graph::UNLABELED))
            .or_default() += 1;
    }
    output::write_json(
        &args.out.join("themes.json"),
        &ThemeReport {
            labeled_share: labels.labeled_share,
            corpus: labels.histogram(),
            graph_nodes,
        },
    )?;

    if settings.project_accounts {
        let linkage = if settings.component_account_linkage {
            AccountLinkage::Component
        } else {
            AccountLinkage::DirectPair
        };
        let accounts = graph::project_accounts_with(&g, &corpus, linkage)?;
        export_all(GraphRef::from(&accounts), &args.out, "accounts")?;
        output::write_csv(&args.out.join("method_mix.csv"), graph::method_mix(&verdicts, &corpus)?)?;
        output::write_json(
            &args.out.join("sunburst.json"),
            &sunburst(&g, &accounts, &corpus, &labels)?,
        )?;
        eprintln!(
            "account graph: {} accounts, {} links",
            accounts.node_count(),
            accounts.edge_count()
        );
    }

    let mut inputs = BTreeMap::from([("verdicts", args.verdicts.as_path()), ("corpus", args.corpus.as_path())]);
    if let Some(path) = &settings.theme_map {
        inputs.insert("themes", path);
    }
    RunConfig {
        command: "graph",
        inputs,
        output_dir: &args.out,
        settings: &settings,
    }
    .write()?;
    eprintln!(
        "message graph: {} nodes, {} edges, {} components",
        g.node_count(),
        g.edge_count(),
        components.len()
    );
    Ok(())
}
