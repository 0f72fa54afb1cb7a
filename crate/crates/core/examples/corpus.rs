//! Random stable graphs and the invariant suite run over them.
//!
//! cargo run --release --example corpus -- [seed] [count]

use abelgraph::corpus::{generate, run_suite, CorpusSpec};

fn main() -> abelgraph::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(42, |s| s.parse().expect("seed is an integer"));
    let count = args.next().map_or(50, |s| s.parse().expect("count is an integer"));
    let spec = CorpusSpec { genus: [2, 5], vertices: [1, 6], max_edges: 12, seed, count, loop_probability: 0.15 };
    let graphs = generate(&spec)?;

    let mut by_genus = std::collections::BTreeMap::new();
    for g in &graphs {
        *by_genus.entry(g.genus()).or_insert(0) += 1;
    }
    println!("{} graphs by genus: {by_genus:?}", graphs.len());

    let report = run_suite(&graphs);
    println!("{} checks, {} violations", report.checks, report.violations.len());
    for v in &report.violations {
        println!("  graph {} {}: {}", v.graph, v.check, v.message);
    }
    Ok(())
}
