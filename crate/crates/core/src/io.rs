//! Text formats: the line-based graph format, the canonical decomposition
//! document, and DOT output.
//!
//! Graph format, one statement per line:
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! edge a b
//! ```
//!
//! Labels match `[A-Za-z0-9_]+`. An edge may only name vertices declared on
//! earlier lines.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{SimplicialGraph, VertexSet};
use crate::jsj::{JsjDecomposition, LeafCertificate, TraceLevel};

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

// The meaningful part of a line: comment stripped and trimmed.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses the graph format, reporting every malformed line.
pub fn parse_graph(text: &str) -> Result<SimplicialGraph> {
    let mut errors = ParseError::default();
    let mut vertices: Vec<String> = Vec::new();
    let mut declared = HashSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut seen_edges = HashSet::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens: Vec<&str> = content(line).split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["vertex", label] => {
                if !valid_label(label) {
                    errors.push(line_no, format!("invalid label '{label}'"));
                } else if !declared.insert(label.to_string()) {
                    errors.push(line_no, format!("duplicate vertex {label}"));
                } else {
                    vertices.push(label.to_string());
                }
            }
            ["edge", a, b] => {
                let mut ok = true;
                for l in [a, b] {
                    if !valid_label(l) {
                        errors.push(line_no, format!("invalid label '{l}'"));
                        ok = false;
                    } else if !declared.contains(*l) {
                        errors.push(line_no, format!("unknown vertex {l}"));
                        ok = false;
                    }
                }
                if !ok {
                    continue;
                }
                if a == b {
                    errors.push(line_no, "loop edge");
                } else if !seen_edges.insert(if a < b { (*a, *b) } else { (*b, *a) }) {
                    errors.push(line_no, format!("duplicate edge {a} {b}"));
                } else {
                    edges.push((a.to_string(), b.to_string()));
                }
            }
            ["vertex", ..] => errors.push(line_no, "vertex line needs exactly one label"),
            ["edge", ..] => errors.push(line_no, "edge line needs exactly two labels"),
            [other, ..] => errors.push(line_no, format!("unrecognized statement '{other}'")),
        }
    }
    if !errors.issues.is_empty() {
        return Err(Error::Parse(errors));
    }
    SimplicialGraph::new(vertices, edges)
}

/// The graph in the text format, in declaration order.
pub fn emit_graph(g: &SimplicialGraph) -> String {
    let mut out = String::new();
    for v in g.labels() {
        let _ = writeln!(out, "vertex {v}");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}

/// The graph on a single line, statements separated by `; `. Used for corpus
/// dumps.
pub fn emit_graph_line(g: &SimplicialGraph) -> String {
    emit_graph(g).lines().collect::<Vec<_>>().join("; ")
}

pub fn parse_graph_line(line: &str) -> Result<SimplicialGraph> {
    parse_graph(&line.replace(';', "\n"))
}

fn parse_set(token: &str) -> Option<VertexSet> {
    let inner = token.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(VertexSet::new());
    }
    let labels: Vec<&str> = inner.split(',').collect();
    if labels.iter().all(|l| valid_label(l)) {
        let set: VertexSet = labels.iter().copied().collect();
        (set.len() == labels.len()).then_some(set)
    } else {
        None
    }
}

/// A decomposition together with the host graph, certificates and recursion
/// trace, as written by the `jsj` command and read by `verify`.
///
/// The text form is canonical: labels are sorted everywhere, nodes are
/// numbered depth-first from the least bag, and equal decompositions give
/// identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionDocument {
    pub host: Option<SimplicialGraph>,
    pub gog: GraphOfGroups,
    pub certificates: BTreeMap<usize, LeafCertificate>,
    pub trace: Vec<TraceLevel>,
}

impl DecompositionDocument {
    pub fn from_jsj(g: &SimplicialGraph, jsj: &JsjDecomposition) -> Self {
        DecompositionDocument {
            host: Some(g.clone()),
            gog: jsj.gog.clone(),
            certificates: jsj.certificates.iter().copied().enumerate().collect(),
            trace: jsj.trace.clone(),
        }
    }

    pub fn from_gog(g: &SimplicialGraph, gog: &GraphOfGroups) -> Self {
        DecompositionDocument {
            host: Some(g.clone()),
            gog: gog.clone(),
            ..Self::default()
        }
    }

    /// Nodes renumbered canonically, certificates following their nodes,
    /// trace sorted.
    pub fn canonical(&self) -> Self {
        let ids = self.gog.canonical_ids();
        let certificates = self
            .certificates
            .iter()
            .filter(|(&id, _)| id < ids.len())
            .map(|(&id, &c)| (ids[id], c))
            .collect();
        let mut trace = self.trace.clone();
        trace.sort();
        DecompositionDocument {
            host: self.host.clone(),
            gog: self.gog.renumber(&ids),
            certificates,
            trace,
        }
    }

    /// Whether the echoed host has the same vertices and edges as `g`,
    /// ignoring declaration order. A document without a host matches.
    pub fn host_matches(&self, g: &SimplicialGraph) -> bool {
        let Some(host) = &self.host else { return true };
        let vertices = |g: &SimplicialGraph| g.labels().iter().cloned().collect::<BTreeSet<_>>();
        vertices(host) == vertices(g) && sorted_edges(host) == sorted_edges(g)
    }

    pub fn to_text(&self) -> String {
        let doc = self.canonical();
        let mut out = String::from("# abelian JSJ decomposition\n");
        if let Some(host) = &doc.host {
            let mut labels: Vec<&String> = host.labels().iter().collect();
            labels.sort();
            for v in labels {
                let _ = writeln!(out, "host vertex {v}");
            }
            for (a, b) in sorted_edges(host) {
                let _ = writeln!(out, "host edge {a} {b}");
            }
        }
        for (id, bag) in doc.gog.nodes.iter().enumerate() {
            let _ = writeln!(out, "node {id} {bag}");
        }
        for e in &doc.gog.edges {
            let _ = writeln!(out, "edge {} {} {}", e.a, e.b, e.adhesion);
        }
        for (id, cert) in &doc.certificates {
            let _ = writeln!(out, "certificate {id} {cert}");
        }
        for t in &doc.trace {
            let parent = t.parent.as_ref().map_or("-".to_string(), VertexSet::to_string);
            let k = t.k.map_or("none".to_string(), |k| k.to_string());
            let _ = write!(out, "trace {} {} parent {} k {}", t.depth, t.subgraph, parent, k);
            if !t.cliques.is_empty() {
                out.push_str(" cliques");
                for c in &t.cliques {
                    let _ = write!(out, " {c}");
                }
            }
            out.push('\n');
        }
        out
    }

    /// Reads a document. Node ids must be `0..n` in order; `host`,
    /// `certificate` and `trace` lines are optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut errors = ParseError::default();
        let mut host_text = String::new();
        let mut host_lines = Vec::new();
        let mut doc = DecompositionDocument::default();
        let mut edge_lines = Vec::new();
        let mut cert_lines = Vec::new();

        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let body = content(line);
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["host", rest @ ..] => {
                    host_text.push_str(&rest.join(" "));
                    host_text.push('\n');
                    host_lines.push(line_no);
                }
                ["node", id, bag] => match (id.parse::<usize>(), parse_set(bag)) {
                    (Ok(id), Some(bag)) if id == doc.gog.node_count() => {
                        doc.gog.add_node(bag);
                    }
                    (Ok(_), Some(_)) => errors.push(line_no, "node ids must be consecutive from 0"),
                    _ => errors.push(line_no, "malformed node line"),
                },
                ["edge", a, b, adhesion] => match (a.parse::<usize>(), b.parse::<usize>(), parse_set(adhesion)) {
                    (Ok(a), Ok(b), Some(adhesion)) => edge_lines.push((line_no, a, b, adhesion)),
                    _ => errors.push(line_no, "malformed edge line"),
                },
                ["certificate", id, ..] => {
                    let reason = body.splitn(3, char::is_whitespace).nth(2).unwrap_or("").trim();
                    let cert = match reason {
                        "clique" => Some(LeafCertificate::Clique),
                        "no separating clique" => Some(LeafCertificate::NoSeparatingClique),
                        _ => None,
                    };
                    match (id.parse::<usize>(), cert) {
                        (Ok(id), Some(cert)) => cert_lines.push((line_no, id, cert)),
                        _ => errors.push(line_no, "malformed certificate line"),
                    }
                }
                ["trace", rest @ ..] => match parse_trace(rest) {
                    Some(t) => doc.trace.push(t),
                    None => errors.push(line_no, "malformed trace line"),
                },
                [other, ..] => errors.push(line_no, format!("unrecognized statement '{other}'")),
            }
        }

        let n = doc.gog.node_count();
        for (line_no, a, b, adhesion) in edge_lines {
            if a >= n || b >= n {
                errors.push(line_no, "edge references an undeclared node");
            } else {
                doc.gog.add_edge(a, b, adhesion);
            }
        }
        for (line_no, id, cert) in cert_lines {
            if id >= n {
                errors.push(line_no, "certificate for an undeclared node");
            } else {
                doc.certificates.insert(id, cert);
            }
        }
        if !host_lines.is_empty() {
            match parse_graph(&host_text) {
                Ok(g) => doc.host = Some(g),
                Err(Error::Parse(inner)) => {
                    for issue in inner.issues {
                        errors.push(host_lines[issue.line - 1], issue.reason);
                    }
                }
                Err(e) => errors.push(host_lines[0], e.to_string()),
            }
        }
        errors.into_result(doc)
    }
}

fn sorted_edges(g: &SimplicialGraph) -> Vec<(String, String)> {
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(a, b)| {
            if a <= b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            }
        })
        .collect();
    edges.sort();
    edges
}

// `<depth> <subgraph> parent <set|-> k <n|none> [cliques <set>...]`
fn parse_trace(tokens: &[&str]) -> Option<TraceLevel> {
    let [depth, subgraph, "parent", parent, "k", k, rest @ ..] = tokens else {
        return None;
    };
    let cliques = match rest {
        [] => Vec::new(),
        ["cliques", sets @ ..] if !sets.is_empty() => {
            sets.iter().map(|s| parse_set(s)).collect::<Option<Vec<_>>>()?
        }
        _ => return None,
    };
    Some(TraceLevel {
        depth: depth.parse().ok()?,
        subgraph: parse_set(subgraph)?,
        parent: if *parent == "-" { None } else { Some(parse_set(parent)?) },
        k: if *k == "none" { None } else { Some(k.parse().ok()?) },
        cliques,
    })
}

/// A decomposition as an undirected DOT graph: nodes labeled by bags, edges
/// by adhesions, in canonical order.
pub fn emit_dot(gog: &GraphOfGroups) -> String {
    let gog = gog.canonical();
    let mut out = String::from("graph {\n");
    for (id, bag) in gog.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{id} [label=\"{bag}\"];");
    }
    for e in &gog.edges {
        let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.adhesion);
    }
    out.push_str("}\n");
    out
}

/// A graph as DOT, in declaration order.
pub fn emit_graph_dot(g: &SimplicialGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.labels() {
        let _ = writeln!(out, "  \"{v}\" [label=\"{v}\"];");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}
