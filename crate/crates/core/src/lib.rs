//! Abelian splittings of right-angled Artin groups, read off the defining
//! graph.
//!
//! `A(Γ)` splits nontrivially over an abelian subgroup exactly when `Γ` is
//! disconnected, complete, or contains a separating clique.
//! [`splitting::classify`] decides which case applies and
//! [`jsj::build_jsj`] builds the vertex-elliptic abelian JSJ decomposition,
//! a tree of groups whose vertex groups come from subgraphs without
//! separating cliques and whose edge groups come from cliques.
//!
//! ```
//! use raag_split::{io, jsj, splitting};
//!
//! let g = io::parse_graph("vertex a\nvertex b\nvertex c\nedge a b\nedge b c\n").unwrap();
//! assert_eq!(splitting::classify(&g).unwrap().kind(), splitting::SplittingKind::SeparatingClique);
//!
//! let dec = jsj::build_jsj(&g).unwrap().contracted();
//! assert_eq!(dec.gog.node_count(), 2);
//! assert!(dec.gog.verify_reassembly(&g).is_ok());
//! ```

pub mod cli;
pub mod error;
pub mod gog;
pub mod graph;
pub mod io;
pub mod jsj;
pub mod oracle;
pub mod separators;
pub mod splitting;

pub use error::{Error, Result};
pub use gog::{GraphOfGroups, TreeEdge, Verdict, Violation};
pub use graph::{SimplicialGraph, VertexSet};
pub use jsj::{build_jsj, JsjDecomposition, LeafCertificate};
pub use separators::SeparatorReport;
pub use splitting::{classify, SplittingClass, SplittingKind};
