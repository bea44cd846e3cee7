//! GraphML, DOT and JSONL serialization. Output order follows the graphs'
//! sorted maps, so identical graphs always render to identical bytes.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AccountGraph, DuplicationGraph, GraphError, NodeAttributes};
use crate::classifier::Label;
use crate::corpus::PairKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Graphml,
    Dot,
    Jsonl,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 3] = [ExportFormat::Graphml, ExportFormat::Dot, ExportFormat::Jsonl];

    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Graphml => "graphml",
            ExportFormat::Dot => "dot",
            ExportFormat::Jsonl => "jsonl",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExportFormat::ALL
            .into_iter()
            .find(|f| f.extension().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown graph format {s:?} (expected graphml, dot or jsonl)"))
    }
}

#[derive(Debug, Clone, Copy)]
pub enum GraphRef<'a> {
    Message(&'a DuplicationGraph),
    Account(&'a AccountGraph),
}

impl<'a> From<&'a DuplicationGraph> for GraphRef<'a> {
    fn from(g: &'a DuplicationGraph) -> Self {
        GraphRef::Message(g)
    }
}

impl<'a> From<&'a AccountGraph> for GraphRef<'a> {
    fn from(g: &'a AccountGraph) -> Self {
        GraphRef::Account(g)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ImportedGraph {
    Message(DuplicationGraph),
    Account(AccountGraph),
}

pub fn render(graph: GraphRef<'_>, format: ExportFormat) -> String {
    match format {
        ExportFormat::Graphml => graphml(graph),
        ExportFormat::Dot => dot(graph),
        ExportFormat::Jsonl => jsonl(graph),
    }
}

pub fn export(graph: GraphRef<'_>, format: ExportFormat, path: &Path) -> Result<(), GraphError> {
    std::fs::write(path, render(graph, format)).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn node_fields(attrs: &NodeAttributes) -> [(&'static str, Option<&str>); 3] {
    [
        ("account", attrs.account.as_deref()),
        ("theme", attrs.theme.as_deref()),
        ("lang", attrs.lang.as_deref()),
    ]
}

fn graphml(graph: GraphRef<'_>) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    match graph {
        GraphRef::Message(g) => {
            for key in ["account", "theme", "lang"] {
                let _ = writeln!(
                    out,
                    "  <key id=\"{key}\" for=\"node\" attr.name=\"{key}\" attr.type=\"string\"/>"
                );
            }
            out.push_str("  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n");
            out.push_str("  <graph id=\"messages\" edgedefault=\"undirected\">\n");
            for (id, attrs) in g.nodes() {
                let fields: Vec<_> = node_fields(attrs)
                    .into_iter()
                    .filter_map(|(k, v)| v.map(|v| (k, v)))
                    .collect();
                if fields.is_empty() {
                    let _ = writeln!(out, "    <node id=\"{}\"/>", xml_escape(id));
                } else {
                    let _ = writeln!(out, "    <node id=\"{}\">", xml_escape(id));
                    for (k, v) in fields {
                        let _ = writeln!(out, "      <data key=\"{k}\">{}</data>", xml_escape(v));
                    }
                    out.push_str("    </node>\n");
                }
            }
            for (pair, label) in g.edges() {
                let _ = writeln!(
                    out,
                    "    <edge source=\"{}\" target=\"{}\"><data key=\"label\">{label}</data></edge>",
                    xml_escape(pair.first()),
                    xml_escape(pair.second())
                );
            }
        }
        GraphRef::Account(g) => {
            out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n");
            out.push_str("  <graph id=\"accounts\" edgedefault=\"undirected\">\n");
            for id in g.nodes() {
                let _ = writeln!(out, "    <node id=\"{}\"/>", xml_escape(id));
            }
            for (a, b, w) in g.edges() {
                let _ = writeln!(
                    out,
                    "    <edge source=\"{}\" target=\"{}\"><data key=\"weight\">{w}</data></edge>",
                    xml_escape(a),
                    xml_escape(b)
                );
            }
        }
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn dot(graph: GraphRef<'_>) -> String {
    let mut out = String::new();
    match graph {
        GraphRef::Message(g) => {
            out.push_str("graph messages {\n");
            for (id, attrs) in g.nodes() {
                let fields: Vec<String> = node_fields(attrs)
                    .into_iter()
                    .filter_map(|(k, v)| v.map(|v| format!("{k}={}", dot_quote(v))))
                    .collect();
                if fields.is_empty() {
                    let _ = writeln!(out, "  {};", dot_quote(id));
                } else {
                    let _ = writeln!(out, "  {} [{}];", dot_quote(id), fields.join(", "));
                }
            }
            for (pair, label) in g.edges() {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{label}\"];",
                    dot_quote(pair.first()),
                    dot_quote(pair.second())
                );
            }
        }
        GraphRef::Account(g) => {
            out.push_str("graph accounts {\n");
            for id in g.nodes() {
                let _ = writeln!(out, "  {};", dot_quote(id));
            }
            for (a, b, w) in g.edges() {
                let _ = writeln!(
                    out,
                    "  {} -- {} [weight={w}, label=\"{w}\"];",
                    dot_quote(a),
                    dot_quote(b)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GraphKind {
    Message,
    Account,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line {
    Graph {
        kind: GraphKind,
    },
    Node {
        id: String,
        #[serde(flatten)]
        attributes: NodeAttributes,
    },
    Edge {
        a: String,
        b: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<Label>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weight: Option<u64>,
    },
}

fn jsonl(graph: GraphRef<'_>) -> String {
    let mut lines = Vec::new();
    match graph {
        GraphRef::Message(g) => {
            lines.push(Line::Graph {
                kind: GraphKind::Message,
            });
            lines.extend(g.nodes().map(|(id, attrs)| Line::Node {
                id: id.to_string(),
                attributes: attrs.clone(),
            }));
            lines.extend(g.edges().map(|(pair, label)| Line::Edge {
                a: pair.first().to_string(),
                b: pair.second().to_string(),
                label: Some(label),
                weight: None,
            }));
        }
        GraphRef::Account(g) => {
            lines.push(Line::Graph {
                kind: GraphKind::Account,
            });
            lines.extend(g.nodes().map(|id| Line::Node {
                id: id.to_string(),
                attributes: NodeAttributes::default(),
            }));
            lines.extend(g.edges().map(|(a, b, w)| Line::Edge {
                a: a.to_string(),
                b: b.to_string(),
                label: None,
                weight: Some(w),
            }));
        }
    }
    let mut out = String::new();
    for line in lines {
        out.push_str(&serde_json::to_string(&line).expect("graph lines serialize"));
        out.push('\n');
    }
    out
}

/// Reads a graph written in the JSONL export format.
pub fn import_jsonl(reader: impl BufRead) -> Result<ImportedGraph, GraphError> {
    let record = |line: usize, message: String| GraphError::Record { line, message };
    let mut graph: Option<ImportedGraph> = None;
    for (n, text) in reader.lines().enumerate() {
        let line_no = n + 1;
        let text = text.map_err(|e| record(line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let line: Line = serde_json::from_str(&text).map_err(|e| record(line_no, e.to_string()))?;
        match (line, graph.as_mut()) {
            (Line::Graph { kind }, None) => {
                graph = Some(match kind {
                    GraphKind::Message => ImportedGraph::Message(DuplicationGraph::default()),
                    GraphKind::Account => ImportedGraph::Account(AccountGraph::default()),
                });
            }
            (Line::Graph { .. }, Some(_)) => return Err(record(line_no, "second graph header".into())),
            (_, None) => return Err(record(line_no, "missing graph header".into())),
            (Line::Node { id, attributes }, Some(ImportedGraph::Message(g))) => g.insert_node(id, attributes),
            (Line::Node { id, .. }, Some(ImportedGraph::Account(g))) => {
                g.nodes.insert(id);
            }
            (Line::Edge { a, b, label, .. }, Some(ImportedGraph::Message(g))) => {
                let label = label
                    .filter(|l| l.is_match())
                    .ok_or_else(|| record(line_no, "message edge needs a match label".into()))?;
                let pair = PairKey::new(a, b).ok_or_else(|| record(line_no, "self-loop".into()))?;
                g.add_edge(pair, label);
            }
            (Line::Edge { a, b, weight, .. }, Some(ImportedGraph::Account(g))) => {
                let weight = weight
                    .filter(|&w| w >= 1)
                    .ok_or_else(|| record(line_no, "account edge needs a weight ≥ 1".into()))?;
                if a == b {
                    return Err(record(line_no, "self-loop".into()));
                }
                g.add_weight(&a, &b, weight);
            }
        }
    }
    Ok(graph.unwrap_or(ImportedGraph::Message(DuplicationGraph::default())))
}
