//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! Golden files live in `tests/golden`. Set `UPDATE_GOLDEN=1` to rewrite
//! them from the current pipeline; review the diff before committing.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use raag_split::cli;
use raag_split::io::{emit_dot, emit_graph, parse_graph, DecompositionDocument};
use raag_split::jsj::build_jsj;
use raag_split::oracle::{all_connected, gnp_samples, oracle_classify, oracle_separating_cliques};
use raag_split::separators::{cut_vertices, enumerate_minimal, enumerate_separating_cliques};
use raag_split::splitting::{classify, clique_amalgam, star_elimination, SplittingKind};
use raag_split::{GraphOfGroups, SimplicialGraph, VertexSet};

const EXHAUSTIVE_MAX_N: usize = 7;
const GNP_SAMPLES: usize = 1000;
const GNP_SEED: u64 = 20_240_601;
const RUNTIME_BUDGET: Duration = Duration::from_secs(5 * 60);
const LEAF_ORACLE_MAX_N: usize = 7;

struct Corpus {
    exhaustive: Vec<SimplicialGraph>,
    random: Vec<SimplicialGraph>,
}

impl Corpus {
    fn all(&self) -> impl Iterator<Item = &SimplicialGraph> {
        self.exhaustive.iter().chain(&self.random)
    }

    fn connected(&self) -> impl Iterator<Item = &SimplicialGraph> {
        self.all().filter(|g| g.is_connected())
    }
}

fn show(g: &SimplicialGraph) -> String {
    emit_graph(g).lines().collect::<Vec<_>>().join("; ")
}

type Outcome = Result<String, String>;
type Producer = Box<dyn Fn(&SimplicialGraph) -> Result<String, String>>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn classification_equivalence(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for g in corpus.all() {
        let production = classify(g).map_err(|e| format!("{}: {e}", show(g)))?;
        let oracle = oracle_classify(g).map_err(|e| format!("{}: {e}", show(g)))?;
        if production != oracle {
            return Err(format!("{}: production {production:?} vs oracle {oracle:?}", show(g)));
        }
        if !production.witness_holds(g) {
            return Err(format!("{}: witness does not hold", show(g)));
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > RUNTIME_BUDGET {
        return Err(format!("took {elapsed:?}, budget {RUNTIME_BUDGET:?}"));
    }
    Ok(format!("{checked} graphs agree ({elapsed:.2?})"))
}

fn separator_equivalence(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for g in corpus.all() {
        let production = enumerate_separating_cliques(g, None);
        let oracle = oracle_separating_cliques(g).map_err(|e| e.to_string())?;
        if production != oracle {
            return Err(format!("{}: production {production:?} vs oracle {oracle:?}", show(g)));
        }
        let minimal = enumerate_minimal(g);
        if minimal.minimal_size != oracle.minimal_size || minimal.minimal() != oracle.minimal() {
            return Err(format!("{}: minimal-only search disagrees", show(g)));
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > RUNTIME_BUDGET {
        return Err(format!("took {elapsed:?}, budget {RUNTIME_BUDGET:?}"));
    }
    Ok(format!("{checked} graphs agree ({elapsed:.2?})"))
}

fn bag_is_leaf_clean(g: &SimplicialGraph, bag: &VertexSet) -> Result<(), String> {
    let h = g.induced_subgraph(bag).map_err(|e| e.to_string())?;
    if !h.is_connected() {
        return Err(format!("bag {bag} is disconnected"));
    }
    let separators = if h.vertex_count() <= LEAF_ORACLE_MAX_N {
        oracle_separating_cliques(&h).map_err(|e| e.to_string())?
    } else {
        enumerate_separating_cliques(&h, None)
    };
    if !separators.is_empty() {
        return Err(format!("bag {bag} has separating clique {}", separators.all().next().unwrap()));
    }
    Ok(())
}

fn jsj_invariants(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut nontrivial = 0;
    let mut deepest = 0;
    for g in corpus.connected() {
        let ctx = |msg: String| format!("{}: {msg}", show(g));
        let jsj = build_jsj(g).map_err(|e| ctx(e.to_string()))?;
        for (label, dec) in [("uncontracted", jsj.clone()), ("contracted", jsj.contracted())] {
            let verdict = dec.gog.verify_reassembly(g);
            if !verdict.is_ok() {
                return Err(ctx(format!("{label}: {verdict}")));
            }
            if dec.gog.edge_count() + 1 != dec.gog.node_count() {
                return Err(ctx(format!("{label}: |E| != |V| - 1")));
            }
            for bag in &dec.gog.nodes {
                bag_is_leaf_clean(g, bag).map_err(|m| ctx(format!("{label}: {m}")))?;
            }
            if !dec.certificate_failures(g).is_empty() {
                return Err(ctx(format!("{label}: certificate does not hold")));
            }
        }
        let monotone = jsj.monotonicity_failures();
        if !monotone.is_empty() {
            return Err(ctx(format!("minimal separator size does not increase: {monotone:?}")));
        }
        if !jsj.untraced_adhesions().is_empty() {
            return Err(ctx("adhesion not found among the minimal separating cliques of its level".into()));
        }
        let kind = classify(g).map_err(|e| ctx(e.to_string()))?.kind();
        let trivial_expected = matches!(kind, SplittingKind::Complete | SplittingKind::NoAbelianSplitting);
        if jsj.is_trivial() != trivial_expected {
            return Err(ctx(format!("single node = {} but classification is {kind}", jsj.is_trivial())));
        }
        checked += 1;
        nontrivial += usize::from(!jsj.is_trivial());
        deepest = deepest.max(jsj.trace.iter().map(|t| t.depth).max().unwrap_or(0));
    }
    Ok(format!("{checked} connected graphs, {nontrivial} nontrivial, recursion depth up to {deepest}; zero violations"))
}

fn cut_vertex_specialization(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut with_cut = 0;
    for g in corpus.connected() {
        let single_edge = g.vertex_count() == 2 && g.edge_count() == 1;
        if single_edge {
            continue;
        }
        let report = enumerate_minimal(g);
        let cuts = cut_vertices(g);
        if (report.minimal_size == Some(1)) != !cuts.is_empty() {
            return Err(format!("{}: minimal size {:?}, cut vertices {cuts:?}", show(g), report.minimal_size));
        }
        let full = enumerate_separating_cliques(g, Some(1));
        if full.cut_vertices != cuts {
            return Err(format!("{}: size-1 separators {:?} vs cut vertices {cuts:?}", show(g), full.cut_vertices));
        }
        checked += 1;
        with_cut += usize::from(!cuts.is_empty());
    }
    Ok(format!("{checked} graphs ({with_cut} with a cut vertex); zero disagreements"))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn set(labels: &str) -> VertexSet {
    labels.split_whitespace().collect()
}

fn load(name: &str) -> Result<SimplicialGraph, String> {
    let path = golden_dir().join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{name}: {e}"))
}

/// (graph file, output file, producer)
fn golden_cases() -> Vec<(&'static str, &'static str, Producer)> {
    let doc = |g: &SimplicialGraph, gog: &GraphOfGroups| DecompositionDocument::from_gog(g, gog).to_text();
    let jsj = |contract: bool| {
        move |g: &SimplicialGraph| -> Result<String, String> {
            let mut d = build_jsj(g).map_err(|e| e.to_string())?;
            if contract {
                d = d.contracted();
            }
            Ok(DecompositionDocument::from_jsj(g, &d).to_text())
        }
    };
    vec![
        (
            "p3.graph",
            "p3_amalgam.dec",
            Box::new(move |g| clique_amalgam(g, &set("b")).map(|x| doc(g, &x)).map_err(|e| e.to_string())),
        ),
        ("p4.graph", "p4_jsj_uncontracted.dec", Box::new(jsj(false))),
        ("p4.graph", "p4_jsj.dec", Box::new(jsj(true))),
        (
            "p4.graph",
            "p4_jsj.dot",
            Box::new(|g| build_jsj(g).map(|d| emit_dot(&d.contracted().gog)).map_err(|e| e.to_string())),
        ),
        ("k4.graph", "k4_jsj.dec", Box::new(jsj(true))),
        ("k5.graph", "k5_jsj.dec", Box::new(jsj(true))),
        ("triangle_pendant.graph", "triangle_pendant_jsj.dec", Box::new(jsj(true))),
        (
            "two_triangles.graph",
            "two_triangles_amalgam.dec",
            Box::new(move |g| clique_amalgam(g, &set("a b")).map(|x| doc(g, &x)).map_err(|e| e.to_string())),
        ),
        ("two_triangles.graph", "two_triangles_jsj.dec", Box::new(jsj(true))),
        (
            "star3.graph",
            "star3_amalgam.dec",
            Box::new(move |g| clique_amalgam(g, &set("c")).map(|x| doc(g, &x)).map_err(|e| e.to_string())),
        ),
        (
            "k2.graph",
            "k2_star_elimination.dec",
            Box::new(move |g| star_elimination(g, "v", &set("v")).map(|x| doc(g, &x)).map_err(|e| e.to_string())),
        ),
        (
            "k3.graph",
            "k3_star_elimination.dec",
            Box::new(move |g| star_elimination(g, "v", &set("v")).map(|x| doc(g, &x)).map_err(|e| e.to_string())),
        ),
    ]
}

fn construction_regression() -> Outcome {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cases = golden_cases();
    for (graph_file, out_file, produce) in &cases {
        let g = load(graph_file)?;
        let actual = produce(&g)?;
        let path = golden_dir().join(out_file);
        if update {
            std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
            continue;
        }
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if actual != expected {
            return Err(format!("{out_file} differs from golden:\n--- expected\n{expected}--- actual\n{actual}"));
        }
    }
    Ok(format!("{} golden outputs reproduced byte-for-byte", cases.len()))
}

fn run_cli(args: &[&str]) -> (u8, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["raag-split"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

fn determinism_and_round_trip(corpus: &Corpus) -> Outcome {
    let dir = golden_dir();
    let mut graphs = 0;
    let mut docs = 0;
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    entries.sort();
    for path in &entries {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("graph") => {
                let g = parse_graph(&text).map_err(|e| format!("{name}: {e}"))?;
                if parse_graph(&emit_graph(&g)).map_err(|e| e.to_string())? != g {
                    return Err(format!("{name}: graph round trip changed the graph"));
                }
                let file = path.to_string_lossy().to_string();
                for args in [
                    vec!["classify", file.as_str()],
                    vec!["separators", file.as_str()],
                    vec!["jsj", file.as_str()],
                    vec!["jsj", "--no-contract", file.as_str()],
                    vec!["jsj", "--dot", file.as_str()],
                ] {
                    let first = run_cli(&args);
                    let second = run_cli(&args);
                    if first != second {
                        return Err(format!("{name}: two runs of {args:?} differ"));
                    }
                }
                graphs += 1;
            }
            Some("dec") => {
                let doc = DecompositionDocument::parse(&text).map_err(|e| format!("{name}: {e}"))?;
                if doc.to_text() != text {
                    return Err(format!("{name}: document round trip is not the identity"));
                }
                docs += 1;
            }
            _ => {}
        }
    }

    let mut decompositions = 0;
    for g in corpus.connected() {
        let first = build_jsj(g).map_err(|e| e.to_string())?;
        let second = build_jsj(g).map_err(|e| e.to_string())?;
        let text = DecompositionDocument::from_jsj(g, &first).to_text();
        if text != DecompositionDocument::from_jsj(g, &second).to_text() {
            return Err(format!("{}: two builds serialize differently", show(g)));
        }
        if DecompositionDocument::parse(&text).map_err(|e| e.to_string())?.to_text() != text {
            return Err(format!("{}: document round trip is not the identity", show(g)));
        }
        let once = first.gog.contract_reducible();
        if once.contract_reducible() != once {
            return Err(format!("{}: contraction is not idempotent", show(g)));
        }
        decompositions += 1;
    }
    Ok(format!(
        "{graphs} golden graphs and {docs} golden documents, {decompositions} corpus decompositions: deterministic, round trips exact, contraction idempotent"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = Corpus {
        exhaustive: all_connected(EXHAUSTIVE_MAX_N).expect("exhaustive corpus"),
        random: gnp_samples(GNP_SAMPLES, GNP_SEED),
    };
    println!(
        "corpus: {} connected graphs on <= {EXHAUSTIVE_MAX_N} vertices, {} G(n,p) samples (built in {:.2?})",
        corpus.exhaustive.len(),
        corpus.random.len(),
        start.elapsed()
    );

    let criteria: [Criterion; 6] = [
        ("1 classification oracle equivalence", Box::new(|| classification_equivalence(&corpus))),
        ("2 separator enumeration equivalence", Box::new(|| separator_equivalence(&corpus))),
        ("3 JSJ invariant suite", Box::new(|| jsj_invariants(&corpus))),
        ("4 cut-vertex specialization", Box::new(|| cut_vertex_specialization(&corpus))),
        ("5 construction regression", Box::new(construction_regression)),
        ("6 determinism and round trip", Box::new(|| determinism_and_round_trip(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in criteria.iter() {
        match check() {
            Ok(summary) => println!("PASS [{name}] {summary}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{name}] {reason}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
