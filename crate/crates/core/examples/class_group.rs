//! Degree class group from the Smith form of the twister lattice, and
//! canonical representatives of degree classes.
//!
//! cargo run --example class_group

use abelgraph::graph::DualGraph;
use abelgraph::lattice::{canonical_representative, class_group, classes_equal, spanning_tree_count, twister_multidegree, Multidegree};

fn main() -> abelgraph::Result<()> {
    // two rational components meeting in four points
    let g = DualGraph::new(
        [("C1", 0), ("C2", 0)],
        [("e1", "C1", "C2"), ("e2", "C1", "C2"), ("e3", "C1", "C2"), ("e4", "C1", "C2")],
    )?;
    let group = class_group(&g);
    println!("invariant factors {:?}, order {}", group.invariant_factors, group.order);
    println!("spanning trees {}", spanning_tree_count(&g));

    let twist = twister_multidegree(&g, &[1, 0])?;
    println!("twisting C1 gives {:?}", twist.values());

    for a in -3..=3 {
        let l = Multidegree::new(vec![a, 1 - a]);
        let rep = canonical_representative(&g, &l, 0)?;
        println!("{:?} ~ {:?}", l.values(), rep.values());
    }
    let l = Multidegree::new(vec![-3, 4]);
    println!("(-3, 4) ~ (1, 0): {}", classes_equal(&g, &l, &Multidegree::new(vec![1, 0]))?);
    Ok(())
}
