//! Separating cliques: detection, enumeration by size, and cut vertices.
//!
//! Enumeration grows cliques level by level (every clique of size `s + 1` is
//! a clique of size `s` extended by a later common neighbor) and tests each
//! one for separation, so the first level with a hit gives the minimal size.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};

/// All separating cliques of a graph up to some size bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparatorReport {
    /// Smallest key of `by_size`, if any.
    pub minimal_size: Option<usize>,
    /// Separating cliques grouped by size, each list in lexicographic order.
    pub by_size: BTreeMap<usize, Vec<VertexSet>>,
    /// Members of the size-one separators, sorted.
    pub cut_vertices: Vec<String>,
    /// False when the report was computed on a disconnected host, where
    /// "separating" means "increases the number of components".
    pub host_connected: bool,
}

impl SeparatorReport {
    pub(crate) fn from_sets(by_size: BTreeMap<usize, Vec<VertexSet>>, host_connected: bool) -> Self {
        let mut by_size = by_size;
        by_size.retain(|_, sets| !sets.is_empty());
        for sets in by_size.values_mut() {
            sets.sort();
        }
        let cut_vertices = by_size
            .get(&1)
            .map(|sets| {
                sets.iter()
                    .filter_map(|s| s.first().map(str::to_string))
                    .collect()
            })
            .unwrap_or_default();
        SeparatorReport {
            minimal_size: by_size.keys().next().copied(),
            by_size,
            cut_vertices,
            host_connected,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.by_size.is_empty()
    }

    /// Every listed set, smallest sizes first.
    pub fn all(&self) -> impl Iterator<Item = &VertexSet> + '_ {
        self.by_size.values().flatten()
    }

    /// The separators of minimal size.
    pub fn minimal(&self) -> &[VertexSet] {
        self.minimal_size
            .and_then(|k| self.by_size.get(&k))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// Whether removing `set` disconnects `g`.
///
/// On a connected graph this means the remainder has at least two
/// components. On a disconnected graph the remainder must be nonempty and have
/// strictly more components than `g`.
pub fn is_separating(g: &SimplicialGraph, set: &VertexSet) -> Result<bool> {
    let members = g.resolve(set)?;
    Ok(separates(g, &members, component_count(g)))
}

fn component_count(g: &SimplicialGraph) -> usize {
    g.component_indices(&vec![false; g.vertex_count()]).len()
}

fn separates(g: &SimplicialGraph, members: &[usize], host_components: usize) -> bool {
    if members.len() >= g.vertex_count() {
        return false;
    }
    let mut removed = vec![false; g.vertex_count()];
    for &m in members {
        removed[m] = true;
    }
    let remaining = g.component_indices(&removed).len();
    remaining >= 2 && remaining > host_components
}

/// Every separating clique of `g` with at most `max_size` vertices
/// (default `|V| - 2`).
pub fn enumerate_separating_cliques(g: &SimplicialGraph, max_size: Option<usize>) -> SeparatorReport {
    let bound = max_size.unwrap_or(g.vertex_count().saturating_sub(2));
    let found = search(g, bound, false);
    SeparatorReport::from_sets(found, component_count(g) == 1)
}

/// Only the separating cliques of the smallest size that has any.
pub fn enumerate_minimal(g: &SimplicialGraph) -> SeparatorReport {
    let bound = g.vertex_count().saturating_sub(2);
    let found = search(g, bound, true);
    SeparatorReport::from_sets(found, component_count(g) == 1)
}

/// The minimal size `k` of a separating clique and all separating cliques of
/// size `k`, or `(None, [])` when there is none.
///
/// `g` must be connected and not complete.
pub fn min_separating_cliques(g: &SimplicialGraph) -> Result<(Option<usize>, Vec<VertexSet>)> {
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    if g.is_complete() {
        return Err(Error::precondition("graph is complete"));
    }
    let report = enumerate_minimal(g);
    Ok((report.minimal_size, report.minimal().to_vec()))
}

fn search(g: &SimplicialGraph, bound: usize, stop_at_first: bool) -> BTreeMap<usize, Vec<VertexSet>> {
    let n = g.vertex_count();
    let host_components = component_count(g);
    let mut found = BTreeMap::new();
    // (clique, candidates that extend it): candidates are common neighbors
    // with a larger index than every member
    let mut level: Vec<(Vec<usize>, Vec<usize>)> = (0..n)
        .map(|v| {
            let later = g.neighbor_indices(v).iter().copied().filter(|&w| w > v).collect();
            (vec![v], later)
        })
        .collect();
    let mut size = 1;
    while size <= bound && !level.is_empty() {
        let hits: Vec<VertexSet> = level
            .iter()
            .filter(|(clique, _)| separates(g, clique, host_components))
            .map(|(clique, _)| g.set_of(clique.iter().copied()))
            .collect();
        let hit = !hits.is_empty();
        if hit {
            found.insert(size, hits);
            if stop_at_first {
                break;
            }
        }
        if size == bound {
            break;
        }
        let mut next = Vec::new();
        for (clique, candidates) in &level {
            for (i, &c) in candidates.iter().enumerate() {
                let mut grown = clique.clone();
                grown.push(c);
                let nb = g.neighbor_indices(c);
                let rest = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|w| nb.binary_search(w).is_ok())
                    .collect();
                next.push((grown, rest));
            }
        }
        level = next;
        size += 1;
    }
    found
}

/// Vertices whose removal increases the number of components, found with the
/// linear-time lowpoint method. Sorted by label.
pub fn cut_vertices(g: &SimplicialGraph) -> Vec<String> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (u, parent, pos) = *top;
            let nb = g.neighbor_indices(u);
            if pos < nb.len() {
                top.2 += 1;
                let w = nb[pos];
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != parent {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }

    let mut out: Vec<String> = (0..n)
        .filter(|&v| is_cut[v])
        .map(|v| g.label(v).to_string())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{graph, set};

    fn p3() -> SimplicialGraph {
        graph("a b c", &[("a", "b"), ("b", "c")])
    }

    fn p4() -> SimplicialGraph {
        graph("a b c d", &[("a", "b"), ("b", "c"), ("c", "d")])
    }

    fn c4() -> SimplicialGraph {
        graph("1 2 3 4", &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")])
    }

    fn complete(n: usize) -> SimplicialGraph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        SimplicialGraph::new(labels.clone(), edges).unwrap()
    }

    #[test]
    fn separation_examples() {
        assert!(is_separating(&p3(), &set("b")).unwrap());
        let k4 = complete(4);
        assert!(!is_separating(&k4, &set("v0 v1")).unwrap());
        assert!(!is_separating(&k4, &set("v0 v1 v2")).unwrap());
        assert!(is_separating(&c4(), &set("1 3")).unwrap());
        assert!(!is_separating(&c4(), &set("1 2")).unwrap());
        assert!(is_separating(&c4(), &set("7")).is_err());
    }

    #[test]
    fn separation_on_disconnected_host() {
        let g = graph("a b c x", &[("a", "b"), ("b", "c")]);
        assert!(is_separating(&g, &set("b")).unwrap());
        // removing the isolated vertex reduces the component count
        assert!(!is_separating(&g, &set("x")).unwrap());
        assert!(!is_separating(&g, &set("a")).unwrap());
    }

    #[test]
    fn p4_enumeration() {
        let r = enumerate_separating_cliques(&p4(), None);
        assert_eq!(r.minimal_size, Some(1));
        assert_eq!(r.by_size[&1], vec![set("b"), set("c")]);
        // {b,c} is a clique leaving {a} and {d}
        assert_eq!(r.by_size[&2], vec![set("b c")]);
        assert_eq!(r.cut_vertices, vec!["b", "c"]);
        assert!(r.host_connected);

        let bounded = enumerate_separating_cliques(&p4(), Some(1));
        assert_eq!(bounded.by_size.len(), 1);
    }

    #[test]
    fn c4_and_complete_have_none() {
        assert!(enumerate_separating_cliques(&c4(), None).is_empty());
        assert_eq!(enumerate_separating_cliques(&c4(), None).minimal_size, None);
        for n in 1..=6 {
            assert!(enumerate_separating_cliques(&complete(n), None).is_empty());
        }
    }

    #[test]
    fn minimal_separators() {
        assert_eq!(
            min_separating_cliques(&p4()).unwrap(),
            (Some(1), vec![set("b"), set("c")])
        );
        let pendant = graph("a b c d", &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "d")]);
        assert_eq!(min_separating_cliques(&pendant).unwrap(), (Some(1), vec![set("a")]));
        let diamond = graph(
            "a b c d",
            &[("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")],
        );
        assert_eq!(min_separating_cliques(&diamond).unwrap(), (Some(2), vec![set("a b")]));
        assert_eq!(min_separating_cliques(&c4()).unwrap(), (None, vec![]));
    }

    #[test]
    fn minimal_separators_preconditions() {
        let err = min_separating_cliques(&graph("a b", &[])).unwrap_err();
        assert!(err.to_string().contains("not connected"));
        let err = min_separating_cliques(&complete(3)).unwrap_err();
        assert!(err.to_string().contains("complete"));
        assert!(min_separating_cliques(&SimplicialGraph::empty()).is_err());
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&p3()), vec!["b"]);
        let c5 = graph(
            "1 2 3 4 5",
            &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
        );
        assert!(cut_vertices(&c5).is_empty());
        let claw = graph("c x y z", &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert_eq!(cut_vertices(&claw), vec!["c"]);
        assert!(cut_vertices(&SimplicialGraph::empty()).is_empty());
    }
}
