//! The closed formula on a curve with two components joined by δ nodes.
//!
//! cargo run --example vine

use abelgraph::abel::{bvine_set, vine_abel_multidegree, vine_parameters};
use abelgraph::graph::DualGraph;

fn main() -> abelgraph::Result<()> {
    let g = DualGraph::new([("C1", 1), ("C2", 2)], [("a", "C1", "C2"), ("b", "C1", "C2")])?;
    for d in 1..=4 {
        let params = vine_parameters(&g, d)?;
        println!("d = {d}: lower bound on C1 {}, m = {}", params.lower, params.m);
        for a0 in 0..=d {
            let l = vine_abel_multidegree(&g, d, a0)?;
            println!("  {a0} points on C1: r = {}, multidegree {:?}", params.r(a0), l.values());
        }
        let progression = bvine_set(&g, d)?;
        println!("  progression fills the balanced set: {}", progression.equality);
    }
    Ok(())
}
