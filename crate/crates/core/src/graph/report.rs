use std::collections::{BTreeMap, HashMap};
use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

use super::themes::{ThemeLabels, UNLABELED};
use super::{connected_components, AccountGraph, DuplicationGraph, GraphError};
use crate::classifier::Label;
use crate::corpus::Corpus;

static HASHTAG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"#\w+").expect("valid hashtag regex"));

const TOP_N: usize = 3;

fn method_counts() -> BTreeMap<Label, u64> {
    [Label::CopyPasta, Label::Rewording, Label::Translation]
        .into_iter()
        .map(|l| (l, 0))
        .collect()
}

/// Most frequent first, ties alphabetical.
fn top(counts: HashMap<String, u64>) -> Vec<(String, u64)> {
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.truncate(TOP_N);
    v
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub label_histogram: BTreeMap<Label, u64>,
    pub top_hashtags: Vec<(String, u64)>,
    pub top_languages: Vec<(String, u64)>,
}

/// One summary per message component, in component order. Hashtags are
/// counted case-insensitively.
pub fn component_report(g: &DuplicationGraph, corpus: &Corpus) -> Result<Vec<ComponentSummary>, GraphError> {
    let index = corpus.index();
    let components = connected_components(g, None);
    let mut member_of: HashMap<&str, usize> = HashMap::new();
    for (c, comp) in components.iter().enumerate() {
        for id in &comp.nodes {
            member_of.insert(id.as_str(), c);
        }
    }
    let mut histograms = vec![method_counts(); components.len()];
    for (pair, label) in g.edges() {
        *histograms[member_of[pair.first()]].entry(label).or_default() += 1;
    }
    components
        .iter()
        .zip(histograms)
        .map(|(comp, label_histogram)| {
            let mut tags: HashMap<String, u64> = HashMap::new();
            let mut langs: HashMap<String, u64> = HashMap::new();
            for id in &comp.nodes {
                let m = &corpus.messages()[*index
                    .get(id.as_str())
                    .ok_or_else(|| GraphError::UnknownMessage(id.clone()))?];
                for tag in HASHTAG.find_iter(&m.semantic_text) {
                    *tags.entry(tag.as_str().to_lowercase()).or_default() += 1;
                }
                *langs.entry(m.language.as_str().to_string()).or_default() += 1;
            }
            Ok(ComponentSummary {
                size: comp.size(),
                label_histogram,
                top_hashtags: top(tags),
                top_languages: top(langs),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThemeSlice {
    pub theme: String,
    pub total: u64,
    pub methods: BTreeMap<Label, u64>,
}

/// Duplication methods per theme inside one account cluster.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SunburstCluster {
    pub cluster: usize,
    pub accounts: Vec<String>,
    pub themes: Vec<ThemeSlice>,
}

/// Theme × method counts per account cluster. Each message edge counts once,
/// under the theme of its first labelled endpoint.
pub fn sunburst(
    g: &DuplicationGraph,
    accounts: &AccountGraph,
    corpus: &Corpus,
    themes: &ThemeLabels,
) -> Result<Vec<SunburstCluster>, GraphError> {
    let index = corpus.index();
    let account_of = |id: &str| {
        index
            .get(id)
            .map(|&i| corpus.messages()[i].account_id.as_str())
            .ok_or_else(|| GraphError::UnknownMessage(id.to_string()))
    };
    let clusters = accounts.components();
    let mut cluster_of: HashMap<&str, usize> = HashMap::new();
    for (c, comp) in clusters.iter().enumerate() {
        for a in &comp.nodes {
            cluster_of.insert(a.as_str(), c);
        }
    }
    let mut slices: Vec<BTreeMap<String, BTreeMap<Label, u64>>> = vec![BTreeMap::new(); clusters.len()];
    for (pair, label) in g.edges() {
        let Some(&c) = cluster_of.get(account_of(pair.first())?) else {
            continue;
        };
        let theme = [pair.first(), pair.second()]
            .into_iter()
            .filter_map(|id| themes.theme_of(id))
            .find(|t| *t != UNLABELED)
            .unwrap_or(UNLABELED);
        *slices[c]
            .entry(theme.to_string())
            .or_insert_with(method_counts)
            .entry(label)
            .or_default() += 1;
    }
    Ok(clusters
        .into_iter()
        .zip(slices)
        .enumerate()
        .map(|(cluster, (comp, by_theme))| SunburstCluster {
            cluster,
            accounts: comp.nodes,
            themes: by_theme
                .into_iter()
                .map(|(theme, methods)| ThemeSlice {
                    theme,
                    total: methods.values().sum(),
                    methods,
                })
                .collect(),
        })
        .collect())
}
