//! Finite simplicial graphs and the primitive queries on them.
//!
//! A [`SimplicialGraph`] is immutable once built. Vertex labels are opaque,
//! case-sensitive strings; the order in which vertices are declared is the
//! canonical vertex order used by every traversal in this crate. Subsets of
//! vertices are carried as [`VertexSet`]s of labels, so a set computed on an
//! induced subgraph is valid in the host graph without translation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A set of vertex labels, interpreted relative to some host graph.
///
/// Ordering is lexicographic on the sorted labels, which is the order every
/// report in this crate uses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<String>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn insert(&mut self, label: impl Into<String>) -> bool {
        self.0.insert(label.into())
    }

    pub fn remove(&mut self, label: &str) -> bool {
        self.0.remove(label)
    }

    /// Labels in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn first(&self) -> Option<&str> {
        self.0.first().map(String::as_str)
    }
}

impl<S: Into<String>> FromIterator<S> for VertexSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        VertexSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a String;
    type IntoIter = std::collections::btree_set::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `{a,b,c}`; the empty set is `{}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, label) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(label)?;
        }
        f.write_str("}")
    }
}

/// A finite undirected graph without loops or multi-edges.
#[derive(Clone, Debug, Default)]
pub struct SimplicialGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // sorted neighbor indices
    adjacency: Vec<Vec<usize>>,
    // declaration order, endpoints as declared
    edges: Vec<(usize, usize)>,
}

impl SimplicialGraph {
    /// Builds a graph from vertex labels and label pairs.
    ///
    /// Fails on a duplicate vertex, an edge naming an undeclared vertex, a
    /// loop, or an edge given twice (in either orientation).
    pub fn new<V, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = SimplicialGraph::default();
        for v in vertices {
            let v = v.into();
            if g.index.contains_key(&v) {
                return Err(Error::DuplicateVertex(v));
            }
            g.index.insert(v.clone(), g.labels.len());
            g.labels.push(v);
            g.adjacency.push(Vec::new());
        }
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = g.require(a)?;
            let v = g.require(b)?;
            if u == v {
                return Err(Error::LoopEdge(a.to_string()));
            }
            if g.adjacency[u].binary_search(&v).is_ok() {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            for (x, y) in [(u, v), (v, u)] {
                let pos = g.adjacency[x].binary_search(&y).unwrap_err();
                g.adjacency[x].insert(pos, y);
            }
            g.edges.push((u, v));
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in declaration order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Edges as label pairs, in declaration order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u].as_str(), self.labels[v].as_str()))
    }

    /// Sorted neighbor indices of the vertex at `index`.
    pub fn neighbor_indices(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Adjacency by label; unknown labels are never adjacent.
    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.adjacent(u, v),
            _ => false,
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.labels.iter().cloned().collect()
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Resolves a set to host indices, in declaration order.
    pub fn resolve(&self, set: &VertexSet) -> Result<Vec<usize>> {
        let mut out = set
            .iter()
            .map(|l| self.require(l))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn set_of(&self, indices: impl IntoIterator<Item = usize>) -> VertexSet {
        indices
            .into_iter()
            .map(|i| self.labels[i].clone())
            .collect()
    }

    /// The subgraph on `set` with every host edge between members.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<SimplicialGraph> {
        let keep = self.resolve(set)?;
        let mut inside = vec![false; self.vertex_count()];
        for &i in &keep {
            inside[i] = true;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .map(|&(u, v)| (self.labels[u].as_str(), self.labels[v].as_str()));
        SimplicialGraph::new(keep.iter().map(|&i| self.labels[i].clone()), edges)
    }

    /// The subgraph induced on the complement of `set`.
    pub fn without(&self, set: &VertexSet) -> Result<SimplicialGraph> {
        self.resolve(set)?;
        let rest = self
            .labels
            .iter()
            .filter(|l| !set.contains(l))
            .cloned()
            .collect();
        self.induced_subgraph(&rest)
    }

    /// Connected components as index lists, skipping vertices flagged in
    /// `removed`. Components appear in order of their first vertex.
    pub(crate) fn component_indices(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximal connected vertex sets, in order of their first declared vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.component_indices(&vec![false; self.vertex_count()])
            .into_iter()
            .map(|c| self.set_of(c))
            .collect()
    }

    /// Exactly one component. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.component_indices(&vec![false; self.vertex_count()])
            .len()
            == 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().all(|nb| nb.len() + 1 == n)
    }

    pub fn is_clique(&self, set: &VertexSet) -> Result<bool> {
        let members = self.resolve(set)?;
        Ok(self.indices_form_clique(&members))
    }

    pub(crate) fn indices_form_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Neighbors of `v`.
    pub fn link(&self, v: &str) -> Result<VertexSet> {
        let i = self.require(v)?;
        Ok(self.set_of(self.adjacency[i].iter().copied()))
    }

    /// Neighbors of `v` together with `v`.
    pub fn star(&self, v: &str) -> Result<VertexSet> {
        let mut s = self.link(v)?;
        s.insert(v);
        Ok(s)
    }
}

/// Same vertex order and the same edge set.
impl PartialEq for SimplicialGraph {
    fn eq(&self, other: &Self) -> bool {
        let norm = |g: &SimplicialGraph| {
            let mut e: Vec<(usize, usize)> = g
                .edges
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            e.sort_unstable();
            e
        };
        self.labels == other.labels && norm(self) == norm(other)
    }
}

impl Eq for SimplicialGraph {}
