//! Images of smooth points and nodes under the completed first Abel map.
//!
//! cargo run --example abel_map

use abelgraph::abel::{abel_image, abel_multidegree};
use abelgraph::graph::{DualGraph, PointOnCurve};

fn show(g: &DualGraph, p: PointOnCurve) -> abelgraph::Result<()> {
    let image = abel_image(g, &p)?;
    println!("{p}: {:?} on {:?}, boundary {}", image.multidegree.values(), image.kind, image.boundary);
    for piece in &image.pieces {
        let terms: Vec<String> = piece.divisor.terms().map(|(q, c)| format!("{c:+} {q}")).collect();
        println!("    {:?}: {}", piece.vertices, terms.join(" "));
    }
    Ok(())
}

fn main() -> abelgraph::Result<()> {
    // an elliptic tail on a genus-2 component
    let g = DualGraph::new([("C1", 1), ("C2", 2)], [("r", "C1", "C2")])?;
    println!("multidegree of a point on C1: {:?}", abel_multidegree(&g, &PointOnCurve::smooth("C1", "p"))?.values());
    show(&g, PointOnCurve::smooth("C1", "p"))?;
    show(&g, PointOnCurve::smooth("C2", "p"))?;
    show(&g, PointOnCurve::node("r"))?;

    // a nonseparating node lands on the boundary
    let banana = DualGraph::new([("C1", 1), ("C2", 1)], [("a", "C1", "C2"), ("b", "C1", "C2")])?;
    show(&banana, PointOnCurve::node("a"))?;
    Ok(())
}
