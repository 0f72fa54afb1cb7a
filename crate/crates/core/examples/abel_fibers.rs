//! Which points share an Abel image. On a 1-general curve, only points on a
//! separating tree of rational components collapse.
//!
//! cargo run --example abel_fibers

use abelgraph::abel::{abel_fibers, abel_images_equal, sample_points};
use abelgraph::graph::{DualGraph, PointOnCurve};

fn main() -> abelgraph::Result<()> {
    // two rational components in a chain, each carrying two tails
    let g = DualGraph::new(
        [("O1", 0), ("O2", 0), ("L1", 1), ("L2", 1), ("L3", 1), ("L4", 2)],
        [("r1", "O1", "L1"), ("r2", "O1", "L2"), ("r3", "O2", "L3"), ("r4", "O2", "L4"), ("s", "O1", "O2")],
    )?;
    let points = sample_points(&g, 2);
    for fiber in abel_fibers(&g, &points)? {
        let names: Vec<String> = fiber.iter().map(ToString::to_string).collect();
        println!("{}", names.join(", "));
    }
    let p = PointOnCurve::smooth("O1", "p");
    println!("p@O1 and r4 agree: {}", abel_images_equal(&g, &p, &PointOnCurve::node("r4"))?);
    println!("p@O1 and a point on L4 agree: {}", abel_images_equal(&g, &p, &PointOnCurve::smooth("L4", "q"))?);
    Ok(())
}
