//! Message- and account-level duplication graphs built from verdicts.

mod export;
mod report;
mod themes;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use export::{export, import_jsonl, render, ExportFormat, GraphRef, ImportedGraph};
pub use report::{component_report, sunburst, ComponentSummary, SunburstCluster, ThemeSlice};
pub use themes::{label_themes, ThemeError, ThemeLabels, ThemeMap, UNLABELED};

use crate::classifier::{Label, PairVerdict};
use crate::corpus::{Corpus, PairKey};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("message id {0:?} is not in the corpus")]
    UnknownMessage(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
}

/// Optional per-node annotations carried into exports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeAttributes {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub account: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang: Option<String>,
}

impl NodeAttributes {
    pub fn is_empty(&self) -> bool {
        self.account.is_none() && self.theme.is_none() && self.lang.is_none()
    }
}

/// Messages as nodes, one labelled edge per matched pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DuplicationGraph {
    nodes: BTreeMap<String, NodeAttributes>,
    edges: BTreeMap<PairKey, Label>,
}

impl DuplicationGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&str, &NodeAttributes)> {
        self.nodes.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&PairKey, Label)> {
        self.edges.iter().map(|(k, &l)| (k, l))
    }

    pub fn label(&self, pair: &PairKey) -> Option<Label> {
        self.edges.get(pair).copied()
    }

    /// Adds an edge and its endpoints. `NoMatch` is ignored.
    pub fn add_edge(&mut self, pair: PairKey, label: Label) {
        if !label.is_match() {
            return;
        }
        self.nodes.entry(pair.first().to_string()).or_default();
        self.nodes.entry(pair.second().to_string()).or_default();
        self.edges.insert(pair, label);
    }

    pub(crate) fn insert_node(&mut self, id: String, attributes: NodeAttributes) {
        self.nodes.insert(id, attributes);
    }

    /// Fills account and language from the corpus and, when given, the theme.
    pub fn annotate(&mut self, corpus: &Corpus, themes: Option<&ThemeLabels>) -> Result<(), GraphError> {
        let index = corpus.index();
        for (id, attrs) in self.nodes.iter_mut() {
            let m = &corpus.messages()[*index
                .get(id.as_str())
                .ok_or_else(|| GraphError::UnknownMessage(id.clone()))?];
            attrs.account = Some(m.account_id.clone());
            attrs.lang = Some(m.language.as_str().to_string());
            if let Some(themes) = themes {
                attrs.theme = themes.theme_of(id).map(str::to_string);
            }
        }
        Ok(())
    }
}

pub fn build_message_graph<'a>(verdicts: impl IntoIterator<Item = &'a PairVerdict>) -> DuplicationGraph {
    let mut g = DuplicationGraph::default();
    for v in verdicts {
        g.add_edge(v.pair.clone(), v.label);
    }
    g
}

/// A connected set of message ids, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub nodes: Vec<String>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Groups `nodes` (sorted) by the edges, dropping singletons. Largest first,
/// ties by smallest member.
fn components_of<'a>(nodes: &[&'a str], edges: impl Iterator<Item = (&'a str, &'a str)>) -> Vec<Component> {
    let index: HashMap<&str, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut uf = UnionFind::new(nodes.len());
    let mut touched = vec![false; nodes.len()];
    for (a, b) in edges {
        let (ia, ib) = (index[a], index[b]);
        touched[ia] = true;
        touched[ib] = true;
        uf.union(ia, ib);
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, &n) in nodes.iter().enumerate() {
        if touched[i] {
            groups.entry(uf.find(i)).or_default().push(n.to_string());
        }
    }
    let mut out: Vec<Component> = groups.into_values().map(|nodes| Component { nodes }).collect();
    out.sort_by(|x, y| y.size().cmp(&x.size()).then_with(|| x.nodes[0].cmp(&y.nodes[0])));
    out
}

/// Undirected components over the edges whose label is in `filter` (all
/// edges when `None`). Nodes without a passing edge are left out.
pub fn connected_components(g: &DuplicationGraph, filter: Option<&[Label]>) -> Vec<Component> {
    let nodes: Vec<&str> = g.nodes.keys().map(String::as_str).collect();
    let edges = g
        .edges
        .iter()
        .filter(|(_, l)| filter.map_or(true, |f| f.contains(l)))
        .map(|(k, _)| (k.first(), k.second()));
    components_of(&nodes, edges)
}

/// How two accounts are considered linked when projecting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccountLinkage {
    /// One unit of weight per message edge between the two accounts.
    #[default]
    DirectPair,
    /// One unit of weight per message component both accounts posted into.
    Component,
}

/// Accounts as nodes; weight counts shared duplicate content.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AccountGraph {
    nodes: BTreeSet<String>,
    edges: BTreeMap<(String, String), u64>,
}

impl AccountGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    /// `(a, b, weight)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.edges.iter().map(|((a, b), &w)| (a.as_str(), b.as_str(), w))
    }

    pub fn weight(&self, a: &str, b: &str) -> Option<u64> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.get(&(key.0.to_string(), key.1.to_string())).copied()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Adds `weight` to the edge between two distinct accounts.
    pub fn add_weight(&mut self, a: &str, b: &str, weight: u64) {
        if a == b || weight == 0 {
            return;
        }
        self.nodes.insert(a.to_string());
        self.nodes.insert(b.to_string());
        let key = if a < b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        *self.edges.entry(key).or_default() += weight;
    }

    /// Account clusters: components of the account graph.
    pub fn components(&self) -> Vec<Component> {
        let nodes: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        components_of(&nodes, self.edges.keys().map(|(a, b)| (a.as_str(), b.as_str())))
    }
}

fn account_lookup<'c>(corpus: &'c Corpus) -> impl Fn(&str) -> Result<&'c str, GraphError> {
    let index = corpus.index();
    move |id: &str| {
        index
            .get(id)
            .map(|&i| corpus.messages()[i].account_id.as_str())
            .ok_or_else(|| GraphError::UnknownMessage(id.to_string()))
    }
}

pub fn project_accounts(g: &DuplicationGraph, corpus: &Corpus) -> Result<AccountGraph, GraphError> {
    project_accounts_with(g, corpus, AccountLinkage::DirectPair)
}

pub fn project_accounts_with(
    g: &DuplicationGraph,
    corpus: &Corpus,
    linkage: AccountLinkage,
) -> Result<AccountGraph, GraphError> {
    let account_of = account_lookup(corpus);
    let mut out = AccountGraph::default();
    match linkage {
        AccountLinkage::DirectPair => {
            for (pair, _) in g.edges() {
                out.add_weight(account_of(pair.first())?, account_of(pair.second())?, 1);
            }
        }
        AccountLinkage::Component => {
            for component in connected_components(g, None) {
                let accounts: BTreeSet<&str> = component
                    .nodes
                    .iter()
                    .map(|id| account_of(id))
                    .collect::<Result<_, _>>()?;
                let accounts: Vec<&str> = accounts.into_iter().collect();
                for (i, a) in accounts.iter().enumerate() {
                    for b in &accounts[i + 1..] {
                        out.add_weight(a, b, 1);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Share of an account's duplicate participations per method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodMix {
    pub account_id: String,
    pub copy_pasta: f64,
    pub rewording: f64,
    pub translation: f64,
    pub total: u64,
}

/// Tallies each account's matched pairs by label. Accounts without any match
/// are omitted; the result is sorted by account id.
pub fn method_mix<'a>(
    verdicts: impl IntoIterator<Item = &'a PairVerdict>,
    corpus: &Corpus,
) -> Result<Vec<MethodMix>, GraphError> {
    let account_of = account_lookup(corpus);
    let mut tallies: BTreeMap<&str, [u64; 3]> = BTreeMap::new();
    for v in verdicts {
        let slot = match v.label {
            Label::CopyPasta => 0,
            Label::Rewording => 1,
            Label::Translation => 2,
            Label::NoMatch => continue,
        };
        for id in [v.pair.first(), v.pair.second()] {
            tallies.entry(account_of(id)?).or_default()[slot] += 1;
        }
    }
    Ok(tallies
        .into_iter()
        .map(|(account, counts)| {
            let total: u64 = counts.iter().sum();
            let share = |c: u64| c as f64 / total as f64;
            MethodMix {
                account_id: account.to_string(),
                copy_pasta: share(counts[0]),
                rewording: share(counts[1]),
                translation: share(counts[2]),
                total,
            }
        })
        .collect())
}
