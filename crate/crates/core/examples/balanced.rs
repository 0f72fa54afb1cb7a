//! Balanced multidegrees, the map to degree classes and d-generality.
//!
//! cargo run --example balanced

use abelgraph::balanced::{arithmetic_generality_criterion, basic_bounds, class_map_analysis, enumerate_balanced, is_d_general, sigma1_witness};
use abelgraph::graph::DualGraph;

fn main() -> abelgraph::Result<()> {
    let g = DualGraph::new([("C1", 0), ("C2", 0)], [("e1", "C1", "C2"), ("e2", "C1", "C2"), ("e3", "C1", "C2")])?;

    let c1 = g.subcurve_by_ids(&["C1"])?;
    let bounds = basic_bounds(&c1, 1)?;
    println!("degree 1 on C1 lies in [{}, {}]", bounds.lower, bounds.upper);

    let set = enumerate_balanced(&g, 1)?;
    for l in &set.balanced {
        let stable = set.stably_balanced.contains(l);
        println!("{:?}{}", l.values(), if stable { "  stably balanced" } else { "" });
    }

    let map = class_map_analysis(&g, 1)?;
    println!("{} classes, surjective {}, injective {}", map.class_count, map.surjective, map.injective);
    for (class, members) in &map.fibers {
        let members: Vec<_> = members.iter().map(|l| l.values().to_vec()).collect();
        println!("  class {:?}: {:?}", class.values(), members);
    }

    for d in 0..=4 {
        let general = is_d_general(&g, d)?;
        println!(
            "d = {d}: general {}, guaranteed by genus {}",
            general.general,
            arithmetic_generality_criterion(g.genus(), d)
        );
    }
    if let Some(z) = sigma1_witness(&g)? {
        println!("not 1-general, witnessed by {:?}", z.ids());
    }
    Ok(())
}
