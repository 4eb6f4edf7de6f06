//! Brute-force reference implementations and graph generators.
//!
//! The oracle reads nothing from `g` except its labels and adjacency and
//! evaluates every definition literally over vertex bitmasks. It shares no
//! code with the separator search or the classifier it is used to check.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::separators::SeparatorReport;
use crate::splitting::SplittingClass;

/// Largest graph the exhaustive oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 12;

struct Masks {
    n: usize,
    adj: Vec<u32>,
}

impl Masks {
    fn of(g: &SimplicialGraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > ORACLE_MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                max: ORACLE_MAX_VERTICES,
            });
        }
        let mut adj = vec![0u32; n];
        for (u, row) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if u != v && g.adjacent(u, v) {
                    *row |= 1 << v;
                }
            }
        }
        Ok(Masks { n, adj })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn is_clique(&self, set: u32) -> bool {
        (0..self.n)
            .filter(|&v| set >> v & 1 == 1)
            .all(|v| (set & !(1 << v)) & !self.adj[v] == 0)
    }

    /// Components of the subgraph induced on `within`, as masks.
    fn components(&self, within: u32) -> Vec<u32> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let mut grown = comp;
                for v in 0..self.n {
                    if comp >> v & 1 == 1 {
                        grown |= self.adj[v] & within;
                    }
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn is_separating(&self, set: u32, host_components: usize) -> bool {
        let rest = self.full() & !set;
        if rest == 0 {
            return false;
        }
        let count = self.components(rest).len();
        count >= 2 && count > host_components
    }

    fn to_set(&self, g: &SimplicialGraph, mask: u32) -> VertexSet {
        (0..self.n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| g.label(v).to_string())
            .collect()
    }
}

/// Every separating clique of `g`, found by testing all vertex subsets.
pub fn oracle_separating_cliques(g: &SimplicialGraph) -> Result<SeparatorReport> {
    let m = Masks::of(g)?;
    let host_components = m.components(m.full()).len();
    let mut by_size: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
    for set in 1..=m.full() {
        if m.is_clique(set) && m.is_separating(set, host_components) {
            by_size
                .entry(set.count_ones() as usize)
                .or_default()
                .push(m.to_set(g, set));
        }
    }
    for sets in by_size.values_mut() {
        sets.sort();
    }
    let cut_vertices = by_size
        .get(&1)
        .map(|s| s.iter().flat_map(|v| v.iter().map(str::to_string)).collect())
        .unwrap_or_default();
    Ok(SeparatorReport {
        minimal_size: by_size.keys().next().copied(),
        by_size,
        cut_vertices,
        host_connected: host_components == 1,
    })
}

/// Literal evaluation of the three splitting conditions, in the order
/// disconnected, complete, separating clique.
pub fn oracle_classify(g: &SimplicialGraph) -> Result<SplittingClass> {
    let m = Masks::of(g)?;
    if m.n == 0 {
        return Err(Error::precondition("empty graph: trivial group; splitting undefined"));
    }
    let sorted_sets = |masks: Vec<u32>| {
        let mut sets: Vec<VertexSet> = masks.into_iter().map(|c| m.to_set(g, c)).collect();
        sets.sort();
        sets
    };
    let host = m.components(m.full());
    if host.len() >= 2 {
        return Ok(SplittingClass::Disconnected {
            components: sorted_sets(host),
        });
    }
    if m.is_clique(m.full()) {
        return Ok(SplittingClass::Complete { n: m.n });
    }
    let mut best: Option<(usize, VertexSet, u32)> = None;
    for set in 1..=m.full() {
        if !(m.is_clique(set) && m.is_separating(set, 1)) {
            continue;
        }
        let size = set.count_ones() as usize;
        let labels = m.to_set(g, set);
        let better = match &best {
            None => true,
            Some((s, l, _)) => (size, &labels) < (*s, l),
        };
        if better {
            best = Some((size, labels, set));
        }
    }
    Ok(match best {
        Some((_, clique, mask)) => SplittingClass::SeparatingClique {
            clique,
            components: sorted_sets(m.components(m.full() & !mask)),
        },
        None => SplittingClass::NoAbelianSplitting,
    })
}

/// Vertex label used by the generators: `a`..`z`, then `v26`, `v27`, ...
pub fn vertex_label(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("v{i}")
    }
}

fn from_index_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SimplicialGraph {
    let labels: Vec<String> = (0..n).map(vertex_label).collect();
    let edges: Vec<(String, String)> = edges
        .into_iter()
        .map(|(u, v)| (labels[u].clone(), labels[v].clone()))
        .collect();
    SimplicialGraph::new(labels, edges).expect("generated edges are simple")
}

pub fn path(n: usize) -> SimplicialGraph {
    from_index_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Requires `n >= 3`.
pub fn cycle(n: usize) -> Result<SimplicialGraph> {
    if n < 3 {
        return Err(Error::precondition("a cycle needs at least 3 vertices"));
    }
    Ok(from_index_edges(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn complete(n: usize) -> SimplicialGraph {
    from_index_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `K_{1,leaves}` with centre `a`.
pub fn star(leaves: usize) -> SimplicialGraph {
    from_index_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// A random tree where each vertex after the first attaches to an earlier one.
pub fn random_tree(n: usize, seed: u64) -> SimplicialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    from_index_edges(n, edges)
}

/// `count` complete graphs on `size` vertices, all sharing one common clique
/// of `shared` vertices.
pub fn shared_cliques(count: usize, size: usize, shared: usize) -> Result<SimplicialGraph> {
    if shared > size {
        return Err(Error::precondition("shared clique larger than the cliques"));
    }
    let private = size - shared;
    let n = shared + count * private;
    let mut edges = Vec::new();
    for c in 0..count {
        let members: Vec<usize> = (0..shared)
            .chain((0..private).map(|i| shared + c * private + i))
            .collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !(u < shared && v < shared && c > 0) {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(from_index_edges(n, edges))
}

/// Erdős–Rényi `G(n, p)`; the same seed always gives the same graph.
pub fn gnp(n: usize, p: f64, seed: u64) -> SimplicialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    from_index_edges(n, edges)
}

/// The edge-probability grid used for random samples.
pub const GNP_PROBABILITIES: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// `count` random graphs cycling through [`GNP_PROBABILITIES`] and sizes
/// 2 to 12; sample `i` uses seed `seed + i`.
pub fn gnp_samples(count: usize, seed: u64) -> Vec<SimplicialGraph> {
    (0..count)
        .map(|i| {
            let p = GNP_PROBABILITIES[i % GNP_PROBABILITIES.len()];
            let n = 2 + (i / GNP_PROBABILITIES.len()) % 11;
            gnp(n, p, seed.wrapping_add(i as u64))
        })
        .collect()
}

// Graphs on at most 8 vertices as adjacency rows.
type Rows = [u8; 8];

fn code_under(rows: &Rows, n: usize, perm: &[usize]) -> u32 {
    let mut code = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u32::from(rows[perm[i]] >> perm[j] & 1);
        }
    }
    code
}

/// Canonical code: the least encoding over orderings that sort vertices by
/// (degree, sum of neighbor degrees). That key is isomorphism invariant, so
/// isomorphic graphs share a code.
fn canonical_code(rows: &Rows, n: usize) -> u32 {
    let degree = |v: usize| rows[v].count_ones();
    let key = |v: usize| {
        let s: u32 = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(degree).sum();
        (degree(v), s)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    fn walk(classes: &mut [Vec<usize>], at: usize, perm: &mut Vec<usize>, rows: &Rows, n: usize, best: &mut u32) {
        if at == classes.len() {
            *best = (*best).min(code_under(rows, n, perm));
            return;
        }
        let k = classes[at].len();
        permute(classes, at, 0, k, perm, rows, n, best);
    }
    #[allow(clippy::too_many_arguments)]
    fn permute(classes: &mut [Vec<usize>], at: usize, i: usize, k: usize, perm: &mut Vec<usize>, rows: &Rows, n: usize, best: &mut u32) {
        if i == k {
            let len = perm.len();
            perm.extend_from_slice(&classes[at]);
            walk(classes, at + 1, perm, rows, n, best);
            perm.truncate(len);
            return;
        }
        for j in i..k {
            classes[at].swap(i, j);
            permute(classes, at, i + 1, k, perm, rows, n, best);
            classes[at].swap(i, j);
        }
    }
    let mut best = u32::MAX;
    walk(&mut classes, 0, &mut Vec::with_capacity(n), rows, n, &mut best);
    best
}

fn rows_from_code(code: u32, n: usize) -> Rows {
    let mut rows = [0u8; 8];
    let mut bit = n * n.saturating_sub(1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    rows
}

fn rows_connected(rows: &Rows, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let full = ((1u16 << n) - 1) as u8;
    let mut reach = 1u8;
    loop {
        let mut grown = reach;
        for (v, row) in rows.iter().enumerate().take(n) {
            if reach >> v & 1 == 1 {
                grown |= row;
            }
        }
        if grown == reach {
            return reach == full;
        }
        reach = grown;
    }
}

/// One representative of every isomorphism class of connected graphs with
/// 1 to `max_n` vertices (`max_n <= 8`), ordered by size then canonical code.
pub fn all_connected(max_n: usize) -> Result<Vec<SimplicialGraph>> {
    if max_n > 8 {
        return Err(Error::precondition("exhaustive generation is limited to 8 vertices"));
    }
    let mut out = Vec::new();
    // every graph on n vertices is a graph on n - 1 vertices plus one vertex
    let mut level: Vec<u32> = vec![0];
    for n in 1..=max_n {
        if n > 1 {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for &code in &level {
                let base = rows_from_code(code, n - 1);
                for nb in 0..(1u8 << (n - 1)) {
                    let mut rows = base;
                    rows[n - 1] = nb;
                    for (v, row) in rows.iter_mut().enumerate().take(n - 1) {
                        if nb >> v & 1 == 1 {
                            *row |= 1 << (n - 1);
                        }
                    }
                    let c = canonical_code(&rows, n);
                    if seen.insert(c) {
                        next.push(c);
                    }
                }
            }
            next.sort_unstable();
            level = next;
        }
        for &code in &level {
            let rows = rows_from_code(code, n);
            if rows_connected(&rows, n) {
                let edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| rows[i] >> j & 1 == 1)
                    .collect();
                out.push(from_index_edges(n, edges));
            }
        }
    }
    Ok(out)
}

/// Parameters for [`generate`]; unused fields are ignored by a family.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub clique_size: usize,
    pub shared: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 4,
            p: 0.3,
            count: 1,
            clique_size: 3,
            shared: 2,
        }
    }
}

pub const FAMILIES: [&str; 9] = [
    "path",
    "cycle",
    "complete",
    "star",
    "tree",
    "shared-cliques",
    "gnp",
    "gnp-grid",
    "connected",
];

/// Graphs of a named family. Random families produce `count` graphs with
/// seeds `seed, seed + 1, ...`.
///
/// * `path`, `cycle`, `complete`: on `n` vertices
/// * `star`: `n` leaves
/// * `tree`, `gnp`: random on `n` vertices
/// * `shared-cliques`: `count` copies of `K_clique_size` sharing `K_shared`
/// * `gnp-grid`: `count` samples over sizes 2..=12 and the probability grid
/// * `connected`: every connected graph on up to `n` vertices
pub fn generate(family: &str, params: &GenParams, seed: u64) -> Result<Vec<SimplicialGraph>> {
    let seeds = || (0..params.count as u64).map(|i| seed.wrapping_add(i));
    Ok(match family {
        "path" => vec![path(params.n)],
        "cycle" => vec![cycle(params.n)?],
        "complete" => vec![complete(params.n)],
        "star" => vec![star(params.n)],
        "tree" => seeds().map(|s| random_tree(params.n, s)).collect(),
        "shared-cliques" => vec![shared_cliques(params.count, params.clique_size, params.shared)?],
        "gnp" => {
            if !(0.0..=1.0).contains(&params.p) {
                return Err(Error::precondition("edge probability must lie in [0, 1]"));
            }
            seeds().map(|s| gnp(params.n, params.p, s)).collect()
        }
        "gnp-grid" => gnp_samples(params.count, seed),
        "connected" => all_connected(params.n)?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{graph, set};

    #[test]
    fn oracle_separators_examples() {
        let p4 = graph("a b c d", &[("a", "b"), ("b", "c"), ("c", "d")]);
        let r = oracle_separating_cliques(&p4).unwrap();
        assert_eq!(r.minimal_size, Some(1));
        assert_eq!(r.by_size[&1], vec![set("b"), set("c")]);
        assert_eq!(r.by_size[&2], vec![set("b c")]);
        assert_eq!(r.by_size.len(), 2);

        let c4 = cycle(4).unwrap();
        assert!(oracle_separating_cliques(&c4).unwrap().by_size.is_empty());
        assert!(oracle_separating_cliques(&complete(5)).unwrap().by_size.is_empty());
    }

    #[test]
    fn oracle_classify_examples() {
        assert_eq!(oracle_classify(&cycle(5).unwrap()).unwrap(), SplittingClass::NoAbelianSplitting);
        assert_eq!(oracle_classify(&complete(1)).unwrap(), SplittingClass::Complete { n: 1 });
        assert_eq!(
            oracle_classify(&path(3)).unwrap(),
            SplittingClass::SeparatingClique {
                clique: set("b"),
                components: vec![set("a"), set("c")]
            }
        );
    }

    #[test]
    fn size_guard() {
        let big = path(13);
        assert_eq!(
            oracle_separating_cliques(&big).unwrap_err(),
            Error::TooLarge { n: 13, max: 12 }
        );
        assert!(oracle_classify(&big).is_err());
        assert!(oracle_classify(&SimplicialGraph::empty()).is_err());
    }

    #[test]
    fn structured_families() {
        assert_eq!(path(4), graph("a b c d", &[("a", "b"), ("b", "c"), ("c", "d")]));
        assert_eq!(complete(3), graph("a b c", &[("a", "b"), ("a", "c"), ("b", "c")]));
        assert_eq!(star(3).edge_count(), 3);
        assert!(cycle(2).is_err());
        let t = random_tree(9, 5);
        assert_eq!(t.edge_count(), 8);
        assert!(t.is_connected());

        // two triangles sharing an edge
        let diamond = shared_cliques(2, 3, 2).unwrap();
        assert_eq!(diamond, graph("a b c d", &[("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")]));
    }

    #[test]
    fn gnp_is_seed_deterministic() {
        let a = gnp(8, 0.3, 42);
        assert_eq!(a, gnp(8, 0.3, 42));
        assert_eq!(a.vertex_count(), 8);
        let params = GenParams { n: 8, p: 0.3, count: 3, ..GenParams::default() };
        assert_eq!(generate("gnp", &params, 42).unwrap()[0], a);
        assert_eq!(generate("gnp", &params, 42).unwrap(), generate("gnp", &params, 42).unwrap());
    }

    #[test]
    fn generate_dispatch() {
        let params = GenParams { n: 4, ..GenParams::default() };
        assert_eq!(generate("path", &params, 0).unwrap(), vec![path(4)]);
        assert_eq!(generate("complete", &GenParams { n: 3, ..params.clone() }, 0).unwrap(), vec![complete(3)]);
        assert_eq!(
            generate("hypercube", &params, 0).unwrap_err(),
            Error::UnknownFamily("hypercube".into())
        );
    }

    #[test]
    fn connected_graph_counts() {
        // connected unlabeled graphs on 1..=7 vertices: 1, 1, 2, 6, 21, 112, 853
        let all = all_connected(7).unwrap();
        let mut counts = [0usize; 8];
        for g in &all {
            counts[g.vertex_count()] += 1;
            assert!(g.is_connected());
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 6, 21, 112, 853]);
    }
}
