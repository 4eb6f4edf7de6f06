//! Deciding whether `A(Γ)` splits over an abelian subgroup, and building the
//! one-step splittings that witness it.
//!
//! `A(Γ)` splits nontrivially over an abelian subgroup exactly when `Γ` is
//! disconnected, complete, or has a separating clique. [`classify`] checks the
//! three cases in that order and returns the first that applies together
//! with its witness.

use std::fmt;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{SimplicialGraph, VertexSet};
use crate::separators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplittingKind {
    Disconnected,
    Complete,
    SeparatingClique,
    NoAbelianSplitting,
}

impl fmt::Display for SplittingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingKind::Disconnected => "Disconnected",
            SplittingKind::Complete => "Complete",
            SplittingKind::SeparatingClique => "SeparatingClique",
            SplittingKind::NoAbelianSplitting => "NoAbelianSplitting",
        })
    }
}

/// Outcome of [`classify`]. Component lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingClass {
    /// `A(Γ)` is a free product of the factors on these components.
    Disconnected { components: Vec<VertexSet> },
    /// `A(Γ) ≅ Zⁿ`, which splits over `Zⁿ⁻¹`. `n = 1` is the degenerate case of
    /// `Z` over the trivial group.
    Complete { n: usize },
    /// The lexicographically least minimum-size separating clique, with the
    /// components of `Γ ∖ K`.
    SeparatingClique {
        clique: VertexSet,
        components: Vec<VertexSet>,
    },
    NoAbelianSplitting,
}

impl SplittingClass {
    pub fn kind(&self) -> SplittingKind {
        match self {
            SplittingClass::Disconnected { .. } => SplittingKind::Disconnected,
            SplittingClass::Complete { .. } => SplittingKind::Complete,
            SplittingClass::SeparatingClique { .. } => SplittingKind::SeparatingClique,
            SplittingClass::NoAbelianSplitting => SplittingKind::NoAbelianSplitting,
        }
    }

    pub fn splits(&self) -> bool {
        self.kind() != SplittingKind::NoAbelianSplitting
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, SplittingClass::Complete { n: 1 })
    }

    /// Re-checks the witness against `g`.
    pub fn witness_holds(&self, g: &SimplicialGraph) -> bool {
        match self {
            SplittingClass::Disconnected { components } => {
                components.len() >= 2 && sorted(g.components()) == *components
            }
            SplittingClass::Complete { n } => g.is_complete() && g.vertex_count() == *n,
            SplittingClass::SeparatingClique { clique, components } => {
                g.is_clique(clique).unwrap_or(false)
                    && separators::is_separating(g, clique).unwrap_or(false)
                    && g.without(clique).map(|r| sorted(r.components())).ok().as_ref() == Some(components)
            }
            SplittingClass::NoAbelianSplitting => {
                g.is_connected() && !g.is_complete() && separators::enumerate_minimal(g).is_empty()
            }
        }
    }
}

/// First line is the kind and its main witness; a second line follows for
/// separating cliques (the components) and the degenerate single vertex.
impl fmt::Display for SplittingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplittingClass::Disconnected { components } => {
                write!(f, "Disconnected")?;
                for c in components {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
            SplittingClass::Complete { n } => {
                write!(f, "Complete n={n}")?;
                if *n == 1 {
                    write!(f, "\nnote: degenerate single vertex (Z over the trivial group)")?;
                }
                Ok(())
            }
            SplittingClass::SeparatingClique { clique, components } => {
                write!(f, "SeparatingClique {clique}\ncomponents:")?;
                for c in components {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
            SplittingClass::NoAbelianSplitting => write!(f, "NoAbelianSplitting"),
        }
    }
}

fn sorted(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort();
    sets
}

/// Which case of the abelian splitting criterion applies to `g`.
pub fn classify(g: &SimplicialGraph) -> Result<SplittingClass> {
    if g.is_empty() {
        return Err(Error::precondition("empty graph: trivial group; splitting undefined"));
    }
    let components = g.components();
    if components.len() >= 2 {
        return Ok(SplittingClass::Disconnected {
            components: sorted(components),
        });
    }
    if g.is_complete() {
        return Ok(SplittingClass::Complete { n: g.vertex_count() });
    }
    let (_, minimal) = separators::min_separating_cliques(g)?;
    match minimal.into_iter().next() {
        Some(clique) => {
            let components = sorted(g.without(&clique)?.components());
            Ok(SplittingClass::SeparatingClique { clique, components })
        }
        None => Ok(SplittingClass::NoAbelianSplitting),
    }
}

fn require_separating_clique(g: &SimplicialGraph, clique: &VertexSet) -> Result<Vec<VertexSet>> {
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    if !g.is_clique(clique)? {
        return Err(Error::precondition(format!("{clique} is not a clique")));
    }
    if !separators::is_separating(g, clique)? {
        return Err(Error::precondition(format!("{clique} does not separate the graph")));
    }
    Ok(sorted(g.without(clique)?.components()))
}

/// The star-shaped splitting over a separating clique `K`: a central node
/// with bag `K` and one leaf `C ∪ K` per component `C` of `g ∖ K`. This form
/// is kept even when there are only two components.
pub fn star_splitting(g: &SimplicialGraph, clique: &VertexSet) -> Result<GraphOfGroups> {
    let components = require_separating_clique(g, clique)?;
    let mut gog = GraphOfGroups::single(clique.clone());
    for c in components {
        let leaf = gog.add_node(c.union(clique));
        gog.add_edge(0, leaf, clique.clone());
    }
    Ok(gog.canonical())
}

/// `A(Γ)` as an amalgam over `A(K)` for a separating clique `K`.
///
/// With two components the reducible centre is dropped and the one-edge
/// splitting `A(Γ₀ ∪ K) *_{A(K)} A(Γ₁ ∪ K)` is returned; otherwise this is
/// [`star_splitting`].
pub fn clique_amalgam(g: &SimplicialGraph, clique: &VertexSet) -> Result<GraphOfGroups> {
    let components = require_separating_clique(g, clique)?;
    if let [first, second] = components.as_slice() {
        let mut gog = GraphOfGroups::single(first.union(clique));
        let other = gog.add_node(second.union(clique));
        gog.add_edge(0, other, clique.clone());
        return Ok(gog.canonical());
    }
    star_splitting(g, clique)
}

/// The splitting `A(Γ) = A(Γ') *_{A(star_e(v))} A(star(v))` that removes the
/// vertices `star_h` of a clique star, where `Γ' = Γ ∖ star_h` and
/// `star_e(v) = star(v) ∖ star_h`.
///
/// `star(v)` must be a clique, `star_h` must contain `v` and lie inside
/// `star(v)`, every member of `star_h` must have the same star as `v`, and
/// `Γ'` must be nonempty.
pub fn star_elimination(g: &SimplicialGraph, v: &str, star_h: &VertexSet) -> Result<GraphOfGroups> {
    let star = g.star(v)?;
    if !g.is_clique(&star)? {
        return Err(Error::precondition(format!(
            "star({v}) = {star} is not a clique"
        )));
    }
    if !star_h.contains(v) {
        return Err(Error::precondition(format!("{star_h} does not contain {v}")));
    }
    if !star_h.is_subset(&star) {
        return Err(Error::precondition(format!(
            "{star_h} is not contained in star({v}) = {star}"
        )));
    }
    for w in star_h.iter() {
        if g.star(w)? != star {
            return Err(Error::precondition(format!(
                "star({w}) differs from star({v}); {w} cannot be eliminated with {v}"
            )));
        }
    }
    let rest = g.vertex_set().difference(star_h);
    if rest.is_empty() {
        return Err(Error::precondition(format!(
            "removing {star_h} leaves the empty graph"
        )));
    }
    let elliptic = star.difference(star_h);
    let mut gog = GraphOfGroups::single(rest);
    let s = gog.add_node(star);
    gog.add_edge(0, s, elliptic);
    Ok(gog.canonical())
}

/// The free splitting of a disconnected graph: its components joined in a
/// path by trivial edge groups.
pub fn free_splitting(g: &SimplicialGraph) -> Result<GraphOfGroups> {
    let components = sorted(g.components());
    if components.len() < 2 {
        return Err(Error::precondition("graph is connected"));
    }
    let mut gog = GraphOfGroups::new();
    for (i, c) in components.into_iter().enumerate() {
        gog.add_node(c);
        if i > 0 {
            gog.add_edge(i - 1, i, VertexSet::new());
        }
    }
    Ok(gog.canonical())
}

/// An explicit one-step splitting witnessing `class`, when one exists.
///
/// The complete case uses [`star_elimination`] at the least vertex, so it is
/// unavailable for a single vertex.
pub fn witness_splitting(g: &SimplicialGraph, class: &SplittingClass) -> Result<Option<GraphOfGroups>> {
    match class {
        SplittingClass::Disconnected { .. } => free_splitting(g).map(Some),
        SplittingClass::Complete { n } if *n >= 2 => {
            let v = g.vertex_set().first().map(str::to_string).unwrap_or_default();
            star_elimination(g, &v, &[v.as_str()].into_iter().collect()).map(Some)
        }
        SplittingClass::Complete { .. } | SplittingClass::NoAbelianSplitting => Ok(None),
        SplittingClass::SeparatingClique { clique, .. } => clique_amalgam(g, clique).map(Some),
    }
}
