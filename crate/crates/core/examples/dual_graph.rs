//! Genus, stability, bridges, tails and trees of lines of a dual graph.
//!
//! cargo run --example dual_graph

use abelgraph::graph::{vertex_limit, DualGraph};

fn main() -> abelgraph::Result<()> {
    // a rational component with three elliptic tails
    let star = DualGraph::new(
        [("O", 0), ("L1", 1), ("L2", 1), ("L3", 1)],
        [("r1", "O", "L1"), ("r2", "O", "L2"), ("r3", "O", "L3")],
    )?;
    println!("genus {}, stability {:?}", star.genus(), star.stability_class());
    for v in 0..star.vertex_count() {
        println!("  {}: w = {}", star.vertex(v).id, star.omega_degree(v));
    }

    for tail in star.tails() {
        println!("tail {:?} behind {}: genus {}, {:?}", tail.subcurve.ids(), tail.bridge_id(), tail.genus(), tail.size);
    }
    for tree in star.separating_trees_of_lines() {
        println!("separating tree of lines {:?}", star.ids(tree));
    }

    for z in star.connected_subcurves(true, vertex_limit())? {
        println!("Z = {:?}: k = {}, w = {}", z.ids(), z.k(), z.w());
    }

    let blown = star.blow_up("r1")?;
    println!("blow-up at r1 adds {}, quasistable: {}", blown.exceptional, blown.graph.is_quasistable());
    println!("{}", blown.graph.to_json());
    Ok(())
}
