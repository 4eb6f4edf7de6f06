//! The vertex-elliptic abelian JSJ decomposition.
//!
//! For a connected graph the construction is:
//!
//! 1. find every separating clique of minimal size `k`;
//! 2. take the star splitting over each of them;
//! 3. refine all of those into one tree, whose non-central bags are the
//!    pieces no chosen clique cuts;
//! 4. recurse into each non-central bag with its own minimal separating
//!    cliques (always larger than `k`) and graft the result back in.
//!
//! Recursion stops at bags that are connected and have no separating clique.
//! Central bags are cliques and are never split. Afterwards
//! [`GraphOfGroups::contract_reducible`] removes the reducible centres that
//! two-component splittings leave behind.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{SimplicialGraph, VertexSet};
use crate::separators::{self, is_separating};
use crate::splitting::star_splitting;

/// Why recursion stopped at a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeafCertificate {
    /// The bag is one of the separating cliques used to split its parent.
    Clique,
    /// The bag induces a connected subgraph with no separating clique.
    NoSeparatingClique,
}

impl LeafCertificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            LeafCertificate::Clique => "clique",
            LeafCertificate::NoSeparatingClique => "no separating clique",
        }
    }
}

impl fmt::Display for LeafCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One recursion step: the subgraph examined, its minimal separating clique
/// size (if any) and the cliques it was split along.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TraceLevel {
    pub depth: usize,
    pub subgraph: VertexSet,
    pub parent: Option<VertexSet>,
    pub k: Option<usize>,
    pub cliques: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsjDecomposition {
    pub gog: GraphOfGroups,
    /// Indexed by node id of `gog`.
    pub certificates: Vec<LeafCertificate>,
    /// Sorted by depth, then subgraph.
    pub trace: Vec<TraceLevel>,
}

impl JsjDecomposition {
    /// The same decomposition with reducible valence-two nodes contracted.
    pub fn contracted(&self) -> JsjDecomposition {
        let by_bag: HashMap<&VertexSet, LeafCertificate> = self
            .gog
            .nodes
            .iter()
            .zip(self.certificates.iter().copied())
            .collect();
        let gog = self.gog.contract_reducible();
        let certificates = gog
            .nodes
            .iter()
            .map(|bag| by_bag.get(bag).copied().unwrap_or(LeafCertificate::NoSeparatingClique))
            .collect();
        JsjDecomposition {
            gog,
            certificates,
            trace: self.trace.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.gog.node_count() == 1
    }

    /// Each certificate re-checked against `g`; returns the failing node ids.
    pub fn certificate_failures(&self, g: &SimplicialGraph) -> Vec<usize> {
        self.gog
            .nodes
            .iter()
            .zip(&self.certificates)
            .enumerate()
            .filter(|(_, (bag, cert))| {
                let holds = match cert {
                    LeafCertificate::Clique => g.is_clique(bag).unwrap_or(false),
                    LeafCertificate::NoSeparatingClique => g
                        .induced_subgraph(bag)
                        .map(|h| h.is_connected() && separators::enumerate_minimal(&h).is_empty())
                        .unwrap_or(false),
                };
                !holds
            })
            .map(|(id, _)| id)
            .collect()
    }

    /// Trace steps whose minimal separator size does not exceed their
    /// parent's, as `(parent, child)` pairs.
    pub fn monotonicity_failures(&self) -> Vec<(VertexSet, VertexSet)> {
        let by_key: HashMap<(usize, &VertexSet), &TraceLevel> =
            self.trace.iter().map(|t| ((t.depth, &t.subgraph), t)).collect();
        let mut out = Vec::new();
        for t in &self.trace {
            let Some(parent) = &t.parent else { continue };
            let ok = match by_key.get(&(t.depth.wrapping_sub(1), parent)) {
                Some(p) => match (p.k, t.k) {
                    (Some(pk), Some(ck)) => ck > pk,
                    (Some(_), None) => true,
                    (None, _) => false,
                },
                None => false,
            };
            if !ok {
                out.push((parent.clone(), t.subgraph.clone()));
            }
        }
        out
    }

    /// Adhesions that do not appear among the cliques of any trace step.
    pub fn untraced_adhesions(&self) -> Vec<VertexSet> {
        self.gog
            .edges
            .iter()
            .filter(|e| !self.trace.iter().any(|t| t.cliques.contains(&e.adhesion)))
            .map(|e| e.adhesion.clone())
            .collect()
    }
}

/// Builds the JSJ decomposition of a connected, nonempty graph. The result is
/// canonical and not yet contracted; see [`JsjDecomposition::contracted`].
pub fn build_jsj(g: &SimplicialGraph) -> Result<JsjDecomposition> {
    if g.is_empty() {
        return Err(Error::precondition("empty graph: trivial group; nothing to decompose"));
    }
    if !g.is_connected() {
        return Err(Error::precondition(
            "graph is disconnected; split it into free factors first and decompose each component",
        ));
    }
    let mut trace = Vec::new();
    let (gog, certificates) = decompose(g, g.vertex_set(), None, 0, &mut trace)?;
    let ids = gog.canonical_ids();
    let mut ordered = certificates.clone();
    for (old, &id) in ids.iter().enumerate() {
        ordered[id] = certificates[old];
    }
    trace.sort();
    Ok(JsjDecomposition {
        gog: gog.renumber(&ids),
        certificates: ordered,
        trace,
    })
}

fn decompose(
    g: &SimplicialGraph,
    bag: VertexSet,
    parent: Option<VertexSet>,
    depth: usize,
    trace: &mut Vec<TraceLevel>,
) -> Result<(GraphOfGroups, Vec<LeafCertificate>)> {
    let h = g.induced_subgraph(&bag)?;
    let report = separators::enumerate_minimal(&h);
    let cliques = report.minimal().to_vec();
    trace.push(TraceLevel {
        depth,
        subgraph: bag.clone(),
        parent,
        k: report.minimal_size,
        cliques: cliques.clone(),
    });
    if cliques.is_empty() {
        return Ok((GraphOfGroups::single(bag), vec![LeafCertificate::NoSeparatingClique]));
    }

    let lambda = refine_over(&h, &cliques)?;

    enum Piece {
        Centre(usize),
        Sub(std::ops::Range<usize>),
    }
    let mut out = GraphOfGroups::new();
    let mut certs = Vec::new();
    let mut pieces = Vec::with_capacity(lambda.node_count());
    for piece_bag in &lambda.nodes {
        if cliques.contains(piece_bag) {
            pieces.push(Piece::Centre(out.add_node(piece_bag.clone())));
            certs.push(LeafCertificate::Clique);
        } else {
            let (sub, sub_certs) = decompose(g, piece_bag.clone(), Some(bag.clone()), depth + 1, trace)?;
            let offset = out.node_count();
            out.nodes.extend(sub.nodes);
            for e in sub.edges {
                out.add_edge(e.a + offset, e.b + offset, e.adhesion);
            }
            certs.extend(sub_certs);
            pieces.push(Piece::Sub(offset..out.node_count()));
        }
    }

    // A parent edge attaches to the least bag of the sub-decomposition that
    // contains its adhesion.
    let attach = |piece: &Piece, adhesion: &VertexSet, out: &GraphOfGroups| -> Result<usize> {
        match piece {
            Piece::Centre(id) => Ok(*id),
            Piece::Sub(range) => range
                .clone()
                .filter(|&id| adhesion.is_subset(&out.nodes[id]))
                .min_by(|&x, &y| (&out.nodes[x], x).cmp(&(&out.nodes[y], y)))
                .ok_or_else(|| Error::precondition(format!("adhesion {adhesion} lies in no bag of its piece"))),
        }
    };
    for e in &lambda.edges {
        let a = attach(&pieces[e.a], &e.adhesion, &out)?;
        let b = attach(&pieces[e.b], &e.adhesion, &out)?;
        out.add_edge(a, b, e.adhesion.clone());
    }
    Ok((out, certs))
}

/// Refines the star splittings over `cliques` of `g` into a single tree.
///
/// The cliques are applied one at a time in sorted order. Each splits the
/// unique bag that contains it and that it separates: that node becomes the
/// centre with bag `K`, a leaf `C ∪ K` is added per component `C` of the bag
/// minus `K`, and the node's previous edges move to the leaf that contains
/// their adhesion. The result is not canonicalised.
pub(crate) fn refine_over(g: &SimplicialGraph, cliques: &[VertexSet]) -> Result<GraphOfGroups> {
    let mut sorted = cliques.to_vec();
    sorted.sort();
    let mut gog = GraphOfGroups::single(g.vertex_set());
    for clique in &sorted {
        let mut target = None;
        for (id, bag) in gog.nodes.iter().enumerate() {
            if bag == clique || !clique.is_subset(bag) {
                continue;
            }
            let piece = g.induced_subgraph(bag)?;
            if is_separating(&piece, clique)? && target.as_ref().is_none_or(|(_, b): &(usize, VertexSet)| bag < b) {
                target = Some((id, bag.clone()));
            }
        }
        let Some((id, bag)) = target else {
            return Err(Error::precondition(format!(
                "{clique} does not separate any piece of the refinement"
            )));
        };
        let mut components = g.induced_subgraph(&bag)?.without(clique)?.components();
        components.sort();

        let old_edges = gog.incident(id);
        gog.nodes[id] = clique.clone();
        let leaves: Vec<(VertexSet, usize)> = components
            .into_iter()
            .map(|c| {
                let leaf = gog.add_node(c.union(clique));
                (c, leaf)
            })
            .collect();
        for ei in old_edges {
            let rest = gog.edges[ei].adhesion.difference(clique);
            if rest.is_empty() {
                continue;
            }
            let holders: Vec<usize> = leaves
                .iter()
                .filter(|(c, _)| !c.is_disjoint(&rest))
                .map(|&(_, leaf)| leaf)
                .collect();
            let [leaf] = holders.as_slice() else {
                return Err(Error::precondition(format!(
                    "adhesion {} crosses {clique}",
                    gog.edges[ei].adhesion
                )));
            };
            let e = &mut gog.edges[ei];
            if e.a == id {
                e.a = *leaf;
            } else {
                e.b = *leaf;
            }
        }
        for &(_, leaf) in &leaves {
            gog.add_edge(id, leaf, clique.clone());
        }
    }
    Ok(gog)
}

/// Combines star splittings of `g`, each over a distinct minimal-size
/// separating clique, into their common refinement.
///
/// Each input may be in star form or, for two components, the reduced
/// one-edge form. The result is canonical.
pub fn refine(g: &SimplicialGraph, splittings: &[GraphOfGroups]) -> Result<GraphOfGroups> {
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    let minimal = separators::enumerate_minimal(g).minimal_size;
    let mut cliques = Vec::with_capacity(splittings.len());
    for (i, s) in splittings.iter().enumerate() {
        let Some(first) = s.edges.first() else {
            return Err(Error::precondition(format!("splitting {i} has no edges")));
        };
        let clique = first.adhesion.clone();
        if s.edges.iter().any(|e| e.adhesion != clique) {
            return Err(Error::precondition(format!(
                "splitting {i} is not a star splitting over one clique"
            )));
        }
        if !g.is_clique(&clique)? || !is_separating(g, &clique)? {
            return Err(Error::precondition(format!(
                "adhesion {clique} of splitting {i} is not a separating clique"
            )));
        }
        if minimal != Some(clique.len()) {
            return Err(Error::precondition(format!(
                "adhesion {clique} of splitting {i} is not of minimal size"
            )));
        }
        let expected = star_splitting(g, &clique)?.contract_reducible();
        if s.contract_reducible() != expected {
            return Err(Error::precondition(format!(
                "splitting {i} is not the star splitting over {clique}"
            )));
        }
        if cliques.contains(&clique) {
            return Err(Error::precondition(format!("clique {clique} is given twice")));
        }
        cliques.push(clique);
    }
    if cliques.is_empty() {
        return Ok(GraphOfGroups::single(g.vertex_set()));
    }
    Ok(refine_over(g, &cliques)?.canonical())
}
