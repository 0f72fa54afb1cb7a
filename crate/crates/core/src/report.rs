//! JSON reports for the command-line front end.
//!
//! Multidegrees are written as `{vertex id: degree}` maps and points as
//! strings: `label@component` for a smooth point, the edge id for a node.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abel::{abel_image, bvine_set, vine_abel_multidegree, vine_parameters, AbelImage, HostKind};
use crate::balanced::{class_map_from, enumerate_balanced, is_d_general, ClassMapReport};
use crate::error::Result;
use crate::graph::{DualGraph, PointOnCurve, StabilityClass, Tail};
use crate::lattice::{canonical_representative, class_group, spanning_tree_count, Multidegree};

/// Integers that fit are written as numbers, larger ones as decimal strings.
fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn degrees(host: &DualGraph, l: &Multidegree) -> BTreeMap<String, i64> {
    l.to_map(host)
}

pub fn point_name(p: &PointOnCurve) -> String {
    match p {
        PointOnCurve::Smooth { component, label } => format!("{label}@{component}"),
        PointOnCurve::Node { edge } => edge.clone(),
    }
}

pub fn class_group_report(host: &DualGraph) -> Value {
    let group = class_group(host);
    json!({
        "invariant_factors": group.invariant_factors.iter().map(big).collect::<Vec<_>>(),
        "order": big(&group.order),
        "spanning_trees": big(&spanning_tree_count(host)),
    })
}

#[derive(Serialize)]
struct ClassFiber {
    class: BTreeMap<String, i64>,
    members: Vec<BTreeMap<String, i64>>,
}

/// Balanced and stably balanced multidegrees of degree `d`, with the class
/// map when the host is stable. Class representatives are reduced at `base`.
pub fn balanced_report(host: &DualGraph, d: i64, base: usize) -> Result<Value> {
    let set = enumerate_balanced(host, d)?;
    let mut report = json!({
        "d": d,
        "B": set.balanced.iter().map(|l| degrees(host, l)).collect::<Vec<_>>(),
        "B_tilde": set.stably_balanced.iter().map(|l| degrees(host, l)).collect::<Vec<_>>(),
        "d_general": set.is_d_general(),
        "witness": set.witness().map(|l| degrees(host, l)),
    });
    if host.is_stable() {
        let map: ClassMapReport = class_map_from(host, &set)?;
        if !map.surjective {
            return Err(crate::Error::InvariantViolation(format!(
                "degree {d}: balanced multidegrees reach {} of {} classes",
                map.fibers.len(),
                map.class_count
            )));
        }
        if map.is_bijective() != set.is_d_general() {
            return Err(crate::Error::InvariantViolation(format!(
                "degree {d}: class map bijectivity disagrees with stable balance"
            )));
        }
        let mut fibers = Vec::new();
        for members in map.fibers.values() {
            let class = canonical_representative(host, &members[0], base)?;
            fibers.push(ClassFiber {
                class: degrees(host, &class),
                members: members.iter().map(|l| degrees(host, l)).collect(),
            });
        }
        report["class_map"] = json!({
            "classes": big(&map.class_count),
            "surjective": map.surjective,
            "injective": map.injective,
            "fibers": fibers,
        });
    }
    Ok(report)
}

pub fn abel_image_json(image: &AbelImage) -> Value {
    let host = match &image.kind {
        HostKind::Curve => json!({ "kind": "curve" }),
        HostKind::BlowUp { edge } => json!({ "kind": "blowup", "edge": edge }),
    };
    let pieces: Vec<Value> = image
        .pieces
        .iter()
        .map(|p| {
            let divisor: Vec<(String, i64)> =
                p.divisor.terms().map(|(q, c)| (q.symbol().to_string(), c)).collect();
            json!({ "vertices": p.vertices, "divisor": divisor })
        })
        .collect();
    json!({
        "point": point_name(&image.point),
        "host": host,
        "multidegree": degrees(&image.host, &image.multidegree),
        "boundary": image.boundary,
        "extension": image.extended,
        "pieces": pieces,
    })
}

/// One row per component (a smooth point labelled `label`) and one per node.
pub fn abel_table(host: &DualGraph, label: &str) -> Result<Vec<Value>> {
    let mut points: Vec<PointOnCurve> =
        host.vertices().iter().map(|v| PointOnCurve::smooth(v.id.clone(), label)).collect();
    points.extend(host.edges().iter().map(|e| PointOnCurve::node(e.id.clone())));
    points.iter().map(|p| Ok(abel_image_json(&abel_image(host, p)?))).collect()
}

fn stability_name(class: StabilityClass) -> Value {
    serde_json::to_value(class).expect("enum serializes")
}

pub fn tails_report(host: &DualGraph) -> Result<Value> {
    let tail_json = |t: &Tail<'_>| {
        json!({
            "vertices": t.subcurve.ids(),
            "bridge": t.bridge_id(),
            "genus": t.genus(),
            "size": t.size,
        })
    };
    let small: Vec<Value> = host.small_tail_set()?.iter().map(tail_json).collect();
    Ok(json!({
        "bridges": host.bridges().iter().map(|&e| host.edge(e).id.clone()).collect::<Vec<_>>(),
        "tails": host.tails().iter().map(tail_json).collect::<Vec<_>>(),
        "small_tails": small,
        "separating_lines": host.separating_lines().iter().map(|&v| host.vertex(v).id.clone()).collect::<Vec<_>>(),
        "separating_trees": host.separating_trees_of_lines().iter().map(|&t| host.ids(t)).collect::<Vec<_>>(),
    }))
}

/// Summary, class group, balanced sets for each requested degree, tails and
/// the Abel table. Sections that need a quasistable or stable host of genus
/// at least 2 are left out otherwise.
pub fn analysis_report(host: &DualGraph, degrees_wanted: &[i64], base: usize) -> Result<Value> {
    let stability = host.stability_class();
    let mut report = json!({
        "graph": {
            "vertices": host.vertex_count(),
            "edges": host.edge_count(),
            "genus": host.genus(),
            "stability": stability_name(stability),
        },
        "class_group": class_group_report(host),
        "tails": tails_report(host)?,
    });
    if host.genus() >= 2 && host.is_quasistable() {
        let balanced: Vec<Value> =
            degrees_wanted.iter().map(|&d| balanced_report(host, d, base)).collect::<Result<_>>()?;
        report["balanced"] = json!(balanced);
    }
    if host.genus() >= 2 && host.is_stable() {
        report["abel"] = json!(abel_table(host, "p")?);
    }
    Ok(report)
}

/// The degree-d formula on a two-component curve: `m`, the residues
/// `r(0..=d)`, the progression inside the balanced set and, for a given
/// split, the multidegree.
pub fn vine_report(host: &DualGraph, d: i64, a0: Option<i64>) -> Result<Value> {
    let params = vine_parameters(host, d)?;
    let progression = bvine_set(host, d)?;
    let mut report = json!({
        "d": d,
        "delta": params.delta,
        "m_c1": params.lower.to_string(),
        "m": params.m,
        "r": (0..=d).map(|a| params.r(a)).collect::<Vec<_>>(),
        "bvine": {
            "elements": progression.elements.iter().map(|l| degrees(host, l)).collect::<Vec<_>>(),
            "equality": progression.equality,
        },
        "d_general": is_d_general(host, d)?.general,
    });
    if let Some(a0) = a0 {
        report["a0"] = json!(a0);
        report["multidegree"] = json!(degrees(host, &vine_abel_multidegree(host, d, a0)?));
    }
    Ok(report)
}

pub fn fibers_report(host: &DualGraph, fibers: &[Vec<PointOnCurve>]) -> Value {
    json!({
        "separating_trees": host.separating_trees_of_lines().iter().map(|&t| host.ids(t)).collect::<Vec<_>>(),
        "fibers": fibers
            .iter()
            .map(|f| f.iter().map(point_name).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> DualGraph {
        DualGraph::new(
            [("C1", 0), ("C2", 0)],
            [("e1", "C1", "C2"), ("e2", "C1", "C2"), ("e3", "C1", "C2")],
        )
        .unwrap()
    }

    #[test]
    fn class_group_shape() {
        assert_eq!(
            class_group_report(&g2()).to_string(),
            r#"{"invariant_factors":[3],"order":3,"spanning_trees":3}"#
        );
    }

    #[test]
    fn balanced_shape() {
        let r = balanced_report(&g2(), 1, 0).unwrap();
        assert_eq!(r["d"], 1);
        assert_eq!(r["B"][0], json!({"C1": -1, "C2": 2}));
        assert_eq!(r["B"].as_array().unwrap().len(), 4);
        assert_eq!(r["B_tilde"].as_array().unwrap().len(), 2);
        assert_eq!(r["d_general"], false);
        assert_eq!(r["witness"], json!({"C1": -1, "C2": 2}));
        assert_eq!(r["class_map"]["surjective"], true);
        assert_eq!(r["class_map"]["injective"], false);
    }

    #[test]
    fn abel_shape() {
        let img = abel_image(&g2(), &PointOnCurve::node("e1")).unwrap();
        let j = abel_image_json(&img);
        assert_eq!(j["host"], json!({"kind": "blowup", "edge": "e1"}));
        assert_eq!(j["multidegree"], json!({"C1": 0, "C2": 0, "E_e1": 1}));
        assert_eq!(j["boundary"], true);
        assert_eq!(j["pieces"][1], json!({"vertices": ["E_e1"], "divisor": [["E_e1", 1]]}));
    }

    #[test]
    fn analysis_of_a_smooth_curve() {
        let g1 = DualGraph::new([("C1", 2)], Vec::<(&str, &str, &str)>::new()).unwrap();
        let r = analysis_report(&g1, &[1], 0).unwrap();
        assert_eq!(r["graph"]["genus"], 2);
        assert_eq!(r["class_group"]["order"], 1);
        assert_eq!(r["balanced"][0]["B"], json!([{"C1": 1}]));
        assert_eq!(r["abel"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn vine_shape() {
        let g4 = DualGraph::new([("C1", 1), ("C2", 2)], [("a", "C1", "C2"), ("b", "C1", "C2")]).unwrap();
        let r = vine_report(&g4, 2, Some(2)).unwrap();
        assert_eq!(r["m"], 0);
        assert_eq!(r["r"], json!([0, 1, 0]));
        assert_eq!(r["m_c1"], "-1/3");
        assert_eq!(r["multidegree"], json!({"C1": 0, "C2": 2}));
        assert_eq!(r["bvine"]["equality"], true);
        assert_eq!(r["d_general"], true);
    }
}
