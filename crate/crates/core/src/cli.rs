//! The `raag-split` command line.
//!
//! Exit codes: 0 on success, 1 when an input violates a precondition (or
//! `verify` finds violations), 2 when an input cannot be read or parsed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::graph::SimplicialGraph;
use crate::gog::Violation;
use crate::io::{emit_dot, emit_graph_line, parse_graph, DecompositionDocument};
use crate::jsj::build_jsj;
use crate::oracle::{self, GenParams};
use crate::separators::{enumerate_minimal, enumerate_separating_cliques};
use crate::splitting::classify;

#[derive(Debug, Parser)]
#[command(name = "raag-split", version, about = "Abelian splittings and JSJ decompositions of right-angled Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether A(Γ) splits over an abelian subgroup, with a witness.
    Classify { graph: PathBuf },
    /// List the separating cliques of Γ by size.
    Separators {
        graph: PathBuf,
        /// Largest clique size to consider.
        #[arg(long)]
        max_size: Option<usize>,
        /// Stop at the smallest size that has separating cliques.
        #[arg(long)]
        min_only: bool,
    },
    /// Build the vertex-elliptic abelian JSJ decomposition.
    Jsj {
        graph: PathBuf,
        /// Keep reducible valence-two nodes.
        #[arg(long)]
        no_contract: bool,
        /// Print DOT instead of the decomposition document.
        #[arg(long)]
        dot: bool,
    },
    /// Check a decomposition document against a graph.
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Print generated graphs, one per line.
    Corpus {
        /// One of: path, cycle, complete, star, tree, shared-cliques, gnp,
        /// gnp-grid, connected.
        family: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        clique_size: usize,
        #[arg(long, default_value_t = 2)]
        shared: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

/// Runs the command line with `argv` (program name first) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut impl Write, err: &mut impl Write) -> Result<u8, Failure> {
    let io_failure = |e: std::io::Error| Failure {
        code: 2,
        message: e.to_string(),
    };
    match command {
        Command::Classify { graph } => {
            let g = load_graph(&graph)?;
            let class = classify(&g)?;
            writeln!(out, "{class}").map_err(io_failure)?;
        }
        Command::Separators { graph, max_size, min_only } => {
            let g = load_graph(&graph)?;
            let report = if min_only {
                enumerate_minimal(&g)
            } else {
                enumerate_separating_cliques(&g, max_size)
            };
            if !report.host_connected {
                writeln!(err, "note: graph is disconnected; a set counts as separating when it increases the number of components")
                    .map_err(io_failure)?;
            }
            let k = report.minimal_size.map_or("none".to_string(), |k| k.to_string());
            writeln!(out, "minimal_size {k}").map_err(io_failure)?;
            for (size, sets) in &report.by_size {
                let sets: Vec<String> = sets.iter().map(ToString::to_string).collect();
                writeln!(out, "size {size}: {}", sets.join(" ")).map_err(io_failure)?;
            }
            writeln!(out, "cut_vertices: {}", report.cut_vertices.join(" ")).map_err(io_failure)?;
        }
        Command::Jsj { graph, no_contract, dot } => {
            let g = load_graph(&graph)?;
            let mut jsj = build_jsj(&g)?;
            if !no_contract {
                jsj = jsj.contracted();
            }
            if jsj.is_trivial() {
                writeln!(err, "note: no separating clique; the decomposition is trivial").map_err(io_failure)?;
            }
            let text = if dot {
                emit_dot(&jsj.gog)
            } else {
                DecompositionDocument::from_jsj(&g, &jsj).to_text()
            };
            write!(out, "{text}").map_err(io_failure)?;
        }
        Command::Verify { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let doc = DecompositionDocument::parse(&read(&decomposition)?).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", decomposition.display()),
            })?;
            let mut verdict = doc.gog.verify_reassembly(&g);
            if !doc.host_matches(&g) {
                verdict.violations.insert(0, Violation::HostMismatch);
            }
            writeln!(out, "{verdict}").map_err(io_failure)?;
            return Ok(if verdict.is_ok() { 0 } else { 1 });
        }
        Command::Corpus {
            family,
            n,
            p,
            count,
            clique_size,
            shared,
            seed,
        } => {
            let params = GenParams {
                n,
                p,
                count,
                clique_size,
                shared,
            };
            for g in oracle::generate(&family, &params, seed)? {
                writeln!(out, "{}", emit_graph_line(&g)).map_err(io_failure)?;
            }
        }
    }
    Ok(0)
}
