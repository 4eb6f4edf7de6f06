//! Trees of groups encoded by subgraph bags and clique adhesions.
//!
//! A node with bag `B` stands for the vertex group `A(Γ[B])`; an edge with
//! adhesion `K` stands for the edge group `A(K)`, included into both endpoint
//! groups. When the invariants checked by [`GraphOfGroups::verify_reassembly`]
//! hold, amalgamating the vertex groups over the edge groups along the tree
//! gives back the presentation of `A(Γ)`.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{SimplicialGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub adhesion: VertexSet,
}

/// Nodes are addressed by their position in `nodes`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub nodes: Vec<VertexSet>,
    pub edges: Vec<TreeEdge>,
}

impl GraphOfGroups {
    pub fn new() -> Self {
        Self::default()
    }

    /// One node and no edges: the trivial splitting.
    pub fn single(bag: VertexSet) -> Self {
        GraphOfGroups {
            nodes: vec![bag],
            edges: Vec::new(),
        }
    }

    pub fn add_node(&mut self, bag: VertexSet) -> usize {
        self.nodes.push(bag);
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, adhesion: VertexSet) {
        self.edges.push(TreeEdge { a, b, adhesion });
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn bag(&self, id: usize) -> &VertexSet {
        &self.nodes[id]
    }

    /// Indices into `edges` of the edges touching `id`.
    pub fn incident(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.a == id || e.b == id)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn degree(&self, id: usize) -> usize {
        self.incident(id).len()
    }

    /// Renumbers nodes in depth-first order from the lexicographically least
    /// bag, visiting neighbors in bag order. Edges are stored with the smaller
    /// id first and sorted. Two equal decompositions become identical values.
    pub fn canonical(&self) -> GraphOfGroups {
        self.renumber(&self.canonical_ids())
    }

    /// The canonical id of every node, indexed by current id.
    pub fn canonical_ids(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let by_bag = |ids: &mut Vec<usize>| {
            ids.sort_by(|&x, &y| (&self.nodes[x], x).cmp(&(&self.nodes[y], y)))
        };
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            if e.a < n && e.b < n {
                adjacency[e.a].push(e.b);
                adjacency[e.b].push(e.a);
            }
        }
        for list in adjacency.iter_mut() {
            by_bag(list);
        }
        let mut order: Vec<usize> = (0..n).collect();
        by_bag(&mut order);

        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for &root in &order {
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                if new_id[u] != usize::MAX {
                    continue;
                }
                new_id[u] = next;
                next += 1;
                for &w in adjacency[u].iter().rev() {
                    if new_id[w] == usize::MAX {
                        stack.push(w);
                    }
                }
            }
        }
        new_id
    }

    /// Moves node `i` to `new_id[i]`; `new_id` must be a permutation.
    pub fn renumber(&self, new_id: &[usize]) -> GraphOfGroups {
        let n = self.nodes.len();
        let mut nodes = vec![VertexSet::new(); n];
        for (old, &id) in new_id.iter().enumerate() {
            nodes[id] = self.nodes[old].clone();
        }
        let remap = |x: usize| if x < n { new_id[x] } else { x };
        let mut edges: Vec<TreeEdge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (remap(e.a), remap(e.b));
                TreeEdge {
                    a: a.min(b),
                    b: a.max(b),
                    adhesion: e.adhesion.clone(),
                }
            })
            .collect();
        edges.sort_by(|x, y| (x.a, x.b, &x.adhesion).cmp(&(y.a, y.b, &y.adhesion)));
        GraphOfGroups { nodes, edges }
    }

    fn is_reducible(&self, id: usize) -> bool {
        let incident = self.incident(id);
        incident.len() == 2 && incident.iter().all(|&e| self.edges[e].adhesion == self.nodes[id])
    }

    /// Removes every valence-two node whose bag equals both incident
    /// adhesions by contracting it into its neighbor with the smaller bag.
    /// The result is canonical and contraction is idempotent.
    pub fn contract_reducible(&self) -> GraphOfGroups {
        let mut gog = self.clone();
        loop {
            let candidate = (0..gog.nodes.len())
                .filter(|&id| gog.is_reducible(id))
                .min_by(|&x, &y| (&gog.nodes[x], x).cmp(&(&gog.nodes[y], y)));
            let Some(id) = candidate else { break };
            let incident = gog.incident(id);
            let other_end = |e: usize| {
                let edge = &gog.edges[e];
                if edge.a == id {
                    edge.b
                } else {
                    edge.a
                }
            };
            let (n1, n2) = (other_end(incident[0]), other_end(incident[1]));
            let (target, keep_edge) = if (&gog.nodes[n1], n1) <= (&gog.nodes[n2], n2) {
                (n1, incident[1])
            } else {
                (n2, incident[0])
            };
            let drop_edge = if keep_edge == incident[0] { incident[1] } else { incident[0] };
            {
                let e = &mut gog.edges[keep_edge];
                if e.a == id {
                    e.a = target;
                } else {
                    e.b = target;
                }
            }
            gog.edges.remove(drop_edge);
            gog.nodes.remove(id);
            for e in gog.edges.iter_mut() {
                if e.a > id {
                    e.a -= 1;
                }
                if e.b > id {
                    e.b -= 1;
                }
            }
        }
        gog.canonical()
    }

    /// Checks every structural invariant against the host graph and reports
    /// all failures.
    pub fn verify_reassembly(&self, g: &SimplicialGraph) -> Verdict {
        let mut violations = Vec::new();
        let n = self.nodes.len();
        if n == 0 {
            if !g.is_empty() {
                violations.push(Violation::NoNodes);
            }
            return Verdict { violations };
        }

        for (id, bag) in self.nodes.iter().enumerate() {
            for label in bag.iter().filter(|l| !g.contains(l)) {
                violations.push(Violation::UnknownVertex {
                    node: id,
                    label: label.to_string(),
                });
            }
        }

        let mut valid_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                violations.push(Violation::DanglingEdge { edge: i });
                continue;
            }
            if e.a == e.b {
                violations.push(Violation::SelfLoop { edge: i });
                continue;
            }
            valid_edges.push(i);
            let (ba, bb) = (&self.nodes[e.a], &self.nodes[e.b]);
            match g.is_clique(&e.adhesion) {
                Ok(true) => {}
                Ok(false) => violations.push(Violation::AdhesionNotClique {
                    edge: i,
                    adhesion: e.adhesion.clone(),
                }),
                Err(_) => violations.push(Violation::AdhesionUnknownVertex {
                    edge: i,
                    adhesion: e.adhesion.clone(),
                }),
            }
            if !e.adhesion.is_subset(ba) || !e.adhesion.is_subset(bb) {
                violations.push(Violation::AdhesionNotInBags {
                    edge: i,
                    adhesion: e.adhesion.clone(),
                });
            } else {
                let meet = ba.intersection(bb);
                if meet != e.adhesion {
                    violations.push(Violation::AdhesionNotIntersection {
                        edge: i,
                        adhesion: e.adhesion.clone(),
                        intersection: meet,
                    });
                }
            }
        }

        if self.edges.len() + 1 != n {
            violations.push(Violation::EdgeCount {
                nodes: n,
                edges: self.edges.len(),
            });
        }
        let all: Vec<usize> = (0..n).collect();
        if !self.spans_connected(&all, &valid_edges) {
            violations.push(Violation::Disconnected);
        }

        for label in g.labels() {
            let holding: Vec<usize> = (0..n).filter(|&id| self.nodes[id].contains(label)).collect();
            if holding.is_empty() {
                violations.push(Violation::VertexUncovered(label.clone()));
            } else if !self.spans_connected(&holding, &valid_edges) {
                violations.push(Violation::RunningIntersection(label.clone()));
            }
        }
        for (u, v) in g.edges() {
            if !self.nodes.iter().any(|bag| bag.contains(u) && bag.contains(v)) {
                violations.push(Violation::EdgeUncovered(u.to_string(), v.to_string()));
            }
        }
        Verdict { violations }
    }

    // Whether `ids` is connected using only edges with both ends in `ids`.
    fn spans_connected(&self, ids: &[usize], edges: &[usize]) -> bool {
        let Some(&start) = ids.first() else {
            return true;
        };
        let mut member = vec![false; self.nodes.len()];
        for &id in ids {
            member[id] = true;
        }
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &ei in edges {
                let e = &self.edges[ei];
                let w = if e.a == u {
                    e.b
                } else if e.b == u {
                    e.a
                } else {
                    continue;
                };
                if member[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == ids.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    UnknownVertex { node: usize, label: String },
    DanglingEdge { edge: usize },
    SelfLoop { edge: usize },
    EdgeCount { nodes: usize, edges: usize },
    Disconnected,
    AdhesionNotClique { edge: usize, adhesion: VertexSet },
    AdhesionUnknownVertex { edge: usize, adhesion: VertexSet },
    AdhesionNotInBags { edge: usize, adhesion: VertexSet },
    AdhesionNotIntersection {
        edge: usize,
        adhesion: VertexSet,
        intersection: VertexSet,
    },
    VertexUncovered(String),
    EdgeUncovered(String, String),
    RunningIntersection(String),
    /// The host graph echoed in a document differs from the graph supplied.
    HostMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "decomposition has no nodes"),
            Violation::UnknownVertex { node, label } => {
                write!(f, "node {node} names unknown vertex {label}")
            }
            Violation::DanglingEdge { edge } => write!(f, "tree edge {edge} references a missing node"),
            Violation::SelfLoop { edge } => write!(f, "tree edge {edge} is a loop"),
            Violation::EdgeCount { nodes, edges } => write!(
                f,
                "not a tree: {nodes} nodes but {edges} edges"
            ),
            Violation::Disconnected => write!(f, "not a tree: underlying graph is disconnected"),
            Violation::AdhesionNotClique { edge, adhesion } => {
                write!(f, "adhesion {adhesion} of tree edge {edge} is not a clique")
            }
            Violation::AdhesionUnknownVertex { edge, adhesion } => {
                write!(f, "adhesion {adhesion} of tree edge {edge} names an unknown vertex")
            }
            Violation::AdhesionNotInBags { edge, adhesion } => write!(
                f,
                "adhesion {adhesion} of tree edge {edge} is not contained in both endpoint bags"
            ),
            Violation::AdhesionNotIntersection {
                edge,
                adhesion,
                intersection,
            } => write!(
                f,
                "adhesion {adhesion} of tree edge {edge} differs from the bag intersection {intersection}"
            ),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} uncovered"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {u}–{v} uncovered"),
            Violation::RunningIntersection(v) => {
                write!(f, "nodes containing vertex {v} do not form a subtree")
            }
            Violation::HostMismatch => write!(f, "host graph in document does not match the input graph"),
        }
    }
}

/// Result of [`GraphOfGroups::verify_reassembly`]; ok when no invariant fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        write!(f, "violations:")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}
