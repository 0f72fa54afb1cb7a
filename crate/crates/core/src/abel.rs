//! The first Abel map of a stable curve, its completion over the nodes, its
//! fibers, and the degree-d multidegree formula for curves with two components.
//!
//! Line bundles are described symbolically: an image is a host graph (the curve
//! itself, or its blow-up at a nonseparating node), a multidegree on it, and a
//! list of pieces meeting each other in separating nodes, each carrying a
//! formal divisor of smooth points and node branches.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::balanced::{
    enumerate_balanced, half_canonical_subcurve, is_d_general, BalanceChecker,
};
use crate::error::{Error, Result};
use crate::graph::{DualGraph, PointOnCurve, Tail, VertexSet};
use crate::lattice::{tail_twister_multidegree, Multidegree};

/// The members of Q(X) containing `p`, smallest first. Any two of them are
/// nested.
pub fn small_tails_through<'g>(host: &'g DualGraph, p: &PointOnCurve) -> Result<Vec<Tail<'g>>> {
    p.validate(host)?;
    let mut chain = Vec::new();
    for tail in host.small_tail_set()? {
        if tail.contains(p)? {
            chain.push(tail);
        }
    }
    chain.sort_by_key(|t| t.vertices().len());
    for pair in chain.windows(2) {
        if !pair[0].vertices().is_subset(pair[1].vertices()) || pair[0].vertices() == pair[1].vertices() {
            return Err(Error::InvariantViolation(format!(
                "small tails through {p} are not nested: {:?} and {:?}",
                pair[0].vertices(),
                pair[1].vertices()
            )));
        }
    }
    Ok(chain)
}

fn require_stable(host: &DualGraph) -> Result<()> {
    if host.genus() < 2 {
        return Err(Error::GenusTooSmall(host.genus()));
    }
    if !host.is_stable() {
        return Err(Error::NotStable);
    }
    Ok(())
}

/// `O_X(p)` twisted by every small tail through `p`.
pub fn abel_multidegree(host: &DualGraph, p: &PointOnCurve) -> Result<Multidegree> {
    require_stable(host)?;
    let PointOnCurve::Smooth { component, .. } = p else {
        return Err(Error::InvalidArgument(format!("{p} is not a smooth point")));
    };
    let chain = small_tails_through(host, p)?;
    let terms: Vec<(&Tail, i64)> = chain.iter().map(|t| (t, 1)).collect();
    let indicator = Multidegree::indicator(host.vertex_count(), host.vertex_index(component)?);
    let l = &indicator + &tail_twister_multidegree(host, &terms)?;
    if !BalanceChecker::new(host)?.is_semibalanced(&l)? {
        return Err(Error::InvariantViolation(format!("Abel multidegree of {p} is not semibalanced")));
    }
    Ok(l)
}

/// A point appearing in a formal divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorPoint {
    Smooth { component: String, label: String },
    /// The branch of a node lying on `component`.
    Branch { node: String, component: String },
    /// A point of the exceptional component of a blow-up.
    Exceptional { component: String },
}

impl DivisorPoint {
    pub fn component(&self) -> &str {
        match self {
            DivisorPoint::Smooth { component, .. }
            | DivisorPoint::Branch { component, .. }
            | DivisorPoint::Exceptional { component } => component,
        }
    }

    /// Short name used in reports: the label, the node id, or the exceptional
    /// component id.
    pub fn symbol(&self) -> &str {
        match self {
            DivisorPoint::Smooth { label, .. } => label,
            DivisorPoint::Branch { node, .. } => node,
            DivisorPoint::Exceptional { component } => component,
        }
    }
}

impl fmt::Display for DivisorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.symbol(), self.component())
    }
}

/// Formal integer combination of points, with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalDivisor(BTreeMap<DivisorPoint, i64>);

impl FormalDivisor {
    pub fn add(&mut self, point: DivisorPoint, coefficient: i64) {
        let entry = self.0.entry(point.clone()).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.0.remove(&point);
        }
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DivisorPoint, i64)> {
        self.0.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// A subcurve of the image host together with the divisor of the restricted
/// line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub vertices: Vec<String>,
    pub divisor: FormalDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum HostKind {
    /// The curve itself.
    Curve,
    /// The blow-up at the named node.
    #[serde(rename = "blowup")]
    BlowUp { edge: String },
}

#[derive(Clone, Debug)]
pub struct AbelImage {
    pub point: PointOnCurve,
    pub kind: HostKind,
    pub host: DualGraph,
    pub multidegree: Multidegree,
    pub pieces: Vec<Piece>,
    /// The image is a boundary point of the compactified Picard variety.
    pub boundary: bool,
    /// The curve is not 1-general, so the formulas were applied with the
    /// modified small-tail set (one half tail added).
    pub extended: bool,
}

/// Value of the completed Abel map at any point of the curve.
///
/// With `P_1 ⊃ … ⊃ P_m` the small tails through `p`, `r_i` their generating
/// nodes, `Q` the complement of `P_1`, `Z_i = P_i ∖ P_{i+1}` and `Z_m = P_m`,
/// the pieces are `Q: r_1`, `Z_i: r_{i+1} − r_i` and `Z_m: p − r_m`. At a
/// nonseparating node the host is the blow-up at `p`, the last piece carries
/// `−r_m` only and the exceptional component gets degree one.
pub fn abel_image(host: &DualGraph, p: &PointOnCurve) -> Result<AbelImage> {
    require_stable(host)?;
    p.validate(host)?;
    let extended = half_canonical_subcurve(host)?.is_some();
    let mut chain = small_tails_through(host, p)?;
    chain.reverse();
    let nonseparating = match p {
        PointOnCurve::Node { edge } => Some(edge.as_str()).filter(|&e| {
            !host.is_bridge(host.edge_index(e).expect("validated"))
        }),
        PointOnCurve::Smooth { .. } => None,
    };
    let branch = |t: &Tail, inner: bool| DivisorPoint::Branch {
        node: t.bridge_id().to_string(),
        component: host.vertex(if inner { t.inner } else { t.outer }).id.clone(),
    };

    let mut pieces = Vec::new();
    if let Some(first) = chain.first() {
        let mut divisor = FormalDivisor::default();
        divisor.add(branch(first, false), 1);
        pieces.push(Piece {
            vertices: host.ids(first.vertices().complement(host.vertex_count())),
            divisor,
        });
        for (i, tail) in chain.iter().enumerate() {
            let mut divisor = FormalDivisor::default();
            divisor.add(branch(tail, true), -1);
            let vertices = match chain.get(i + 1) {
                Some(next) => {
                    divisor.add(branch(next, false), 1);
                    tail.vertices().difference(next.vertices())
                }
                None => {
                    match p {
                        PointOnCurve::Smooth { component, label } => divisor.add(
                            DivisorPoint::Smooth { component: component.clone(), label: label.clone() },
                            1,
                        ),
                        PointOnCurve::Node { edge } if nonseparating.is_none() => {
                            if edge != tail.bridge_id() {
                                return Err(Error::InvariantViolation(format!(
                                    "separating node {edge} does not generate the smallest tail through it"
                                )));
                            }
                            divisor.add(branch(tail, true), 1);
                        }
                        PointOnCurve::Node { .. } => {}
                    }
                    tail.vertices()
                }
            };
            pieces.push(Piece { vertices: host.ids(vertices), divisor });
        }
    } else {
        let mut divisor = FormalDivisor::default();
        match p {
            PointOnCurve::Smooth { component, label } => divisor.add(
                DivisorPoint::Smooth { component: component.clone(), label: label.clone() },
                1,
            ),
            PointOnCurve::Node { edge } if nonseparating.is_none() => {
                return Err(Error::InvariantViolation(format!(
                    "separating node {edge} lies in no small tail"
                )));
            }
            PointOnCurve::Node { .. } => {}
        }
        pieces.push(Piece { vertices: host.ids(host.all_vertices()), divisor });
    }

    let (kind, image_host) = match nonseparating {
        Some(edge) => {
            let blown = host.blow_up(edge)?;
            let mut divisor = FormalDivisor::default();
            divisor.add(DivisorPoint::Exceptional { component: blown.exceptional.clone() }, 1);
            pieces.push(Piece { vertices: vec![blown.exceptional.clone()], divisor });
            (HostKind::BlowUp { edge: edge.to_string() }, blown.graph)
        }
        None => (HostKind::Curve, host.clone()),
    };

    let mut multidegree = Multidegree::zeros(image_host.vertex_count());
    for piece in &pieces {
        for (point, c) in piece.divisor.terms() {
            let v = image_host.vertex_index(point.component())?;
            if !piece.vertices.iter().any(|id| id == point.component()) {
                return Err(Error::InvariantViolation(format!("{point} lies outside its piece")));
            }
            multidegree.add_at(v, c);
        }
    }
    let covered: usize = pieces.iter().map(|p| p.vertices.len()).sum();
    let all: VertexSet = pieces
        .iter()
        .flat_map(|p| p.vertices.iter())
        .map(|id| image_host.vertex_index(id))
        .collect::<Result<_>>()?;
    if covered != image_host.vertex_count() || all != image_host.all_vertices() {
        return Err(Error::InvariantViolation(format!("pieces of the image of {p} do not partition the host")));
    }
    if !BalanceChecker::new(&image_host)?.is_semibalanced(&multidegree)? {
        return Err(Error::InvariantViolation(format!("image of {p} is not semibalanced")));
    }
    let boundary = match &kind {
        HostKind::Curve => false,
        HostKind::BlowUp { .. } => {
            let e = image_host.vertex_index(&pieces.last().expect("nonempty").vertices[0])?;
            multidegree[e] == 1
        }
    };
    Ok(AbelImage { point: p.clone(), kind, host: image_host, multidegree, pieces, boundary, extended })
}

/// Compares two images of points of `host` as line bundles.
///
/// A bundle on a curve whose pieces meet in separating nodes is determined by
/// its restrictions to the blocks left after cutting every separating node.
/// On a block, two formal divisors agree when they are equal, or when the block
/// is a single smooth rational component and the degrees match.
fn images_agree(host: &DualGraph, blocks: &[VertexSet], a: &AbelImage, b: &AbelImage) -> Result<bool> {
    match (&a.kind, &b.kind) {
        (HostKind::BlowUp { edge: x }, HostKind::BlowUp { edge: y }) => return Ok(x == y),
        (HostKind::Curve, HostKind::Curve) => {}
        _ => return Ok(false),
    }
    let restrict = |image: &AbelImage| -> Result<Vec<FormalDivisor>> {
        let mut out = vec![FormalDivisor::default(); blocks.len()];
        for piece in &image.pieces {
            for (point, c) in piece.divisor.terms() {
                let v = host.vertex_index(point.component())?;
                let i = blocks.iter().position(|b| b.contains(v)).expect("blocks cover the curve");
                out[i].add(point.clone(), c);
            }
        }
        Ok(out)
    };
    let (da, db) = (restrict(a)?, restrict(b)?);
    Ok(blocks.iter().zip(da.iter().zip(&db)).all(|(block, (x, y))| {
        if x == y {
            return true;
        }
        let rational_line = block.len() == 1 && {
            let v = block.first().expect("blocks are nonempty");
            host.vertex(v).genus == 0 && host.loop_count(v) == 0
        };
        rational_line && x.degree() == y.degree()
    }))
}

/// Whether `p` and `q` have the same image under the completed Abel map.
pub fn abel_images_equal(host: &DualGraph, p: &PointOnCurve, q: &PointOnCurve) -> Result<bool> {
    let (a, b) = (abel_image(host, p)?, abel_image(host, q)?);
    images_agree(host, &host.bridgeless_blocks(), &a, &b)
}

/// `per_component` labelled smooth points on every component, then every node.
/// Labels are `p1`, `p2`, … with primes appended on a clash with a node id.
pub fn sample_points(host: &DualGraph, per_component: usize) -> Vec<PointOnCurve> {
    let labels: Vec<String> = (1..=per_component)
        .map(|i| {
            let mut label = format!("p{i}");
            while host.edge_index(&label).is_ok() {
                label.push('\'');
            }
            label
        })
        .collect();
    let mut points: Vec<PointOnCurve> = host
        .vertices()
        .iter()
        .flat_map(|v| labels.iter().map(|l| PointOnCurve::smooth(v.id.clone(), l.clone())))
        .collect();
    points.extend(host.edges().iter().map(|e| PointOnCurve::node(e.id.clone())));
    points
}

fn sorted_partition(mut groups: Vec<Vec<PointOnCurve>>) -> Vec<Vec<PointOnCurve>> {
    for g in &mut groups {
        g.sort();
    }
    groups.sort();
    groups
}

/// Partition of `points` induced by pairwise comparison of Abel images.
pub fn comparator_partition(host: &DualGraph, points: &[PointOnCurve]) -> Result<Vec<Vec<PointOnCurve>>> {
    let images: Vec<AbelImage> = points.iter().map(|p| abel_image(host, p)).collect::<Result<_>>()?;
    let blocks = host.bridgeless_blocks();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..points.len() {
        let mut home = None;
        for (gi, group) in groups.iter().enumerate() {
            if images_agree(host, &blocks, &images[group[0]], &images[i])? {
                home = Some(gi);
                break;
            }
        }
        match home {
            Some(gi) => groups[gi].push(i),
            None => groups.push(vec![i]),
        }
    }
    // equality of images is an equivalence; check it really is one here
    for group in &groups {
        for &i in group {
            for &j in group {
                if !images_agree(host, &blocks, &images[i], &images[j])? {
                    return Err(Error::InvariantViolation(format!(
                        "image comparison is not transitive on {} and {}",
                        points[i], points[j]
                    )));
                }
            }
        }
    }
    Ok(sorted_partition(
        groups.into_iter().map(|g| g.into_iter().map(|i| points[i].clone()).collect()).collect(),
    ))
}

/// Fibers of the completed Abel map restricted to `points`: the points of a
/// maximal separating tree of lines (smooth points on it and every node on
/// it) collapse, everything else is separated. Requires a 1-general curve and
/// is checked against [`comparator_partition`].
pub fn abel_fibers(host: &DualGraph, points: &[PointOnCurve]) -> Result<Vec<Vec<PointOnCurve>>> {
    require_stable(host)?;
    if !is_d_general(host, 1)?.general {
        return Err(Error::NotOneGeneral);
    }
    let trees = host.separating_trees_of_lines();
    let mut groups: BTreeMap<usize, Vec<PointOnCurve>> = BTreeMap::new();
    let mut singles = Vec::new();
    for p in points {
        p.validate(host)?;
        let on_tree = |v: usize| trees.iter().position(|t| t.contains(v));
        let tree = match p {
            PointOnCurve::Smooth { component, .. } => on_tree(host.vertex_index(component)?),
            PointOnCurve::Node { edge } => {
                let [a, b] = host.edge(host.edge_index(edge)?).ends;
                on_tree(a).or_else(|| on_tree(b))
            }
        };
        match tree {
            Some(t) => groups.entry(t).or_default().push(p.clone()),
            None => singles.push(vec![p.clone()]),
        }
    }
    let fibers = sorted_partition(groups.into_values().chain(singles).collect());
    let oracle = comparator_partition(host, points)?;
    if fibers != oracle {
        return Err(Error::InvariantViolation(
            "separating-tree fibers disagree with the image comparison".into(),
        ));
    }
    Ok(fibers)
}

/// Data of the degree-d formula on a curve with two components `C1` (the
/// first vertex) and `C2` meeting in `δ` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VineParameters {
    pub d: i64,
    pub delta: i64,
    /// `m_{C1}(d)`, exactly.
    pub lower: Ratio<i64>,
    /// `⌈m_{C1}(d)⌉`.
    pub m: i64,
}

impl VineParameters {
    /// The residue of `a − m` in `[0, δ)`.
    pub fn r(&self, a: i64) -> i64 {
        (a - self.m).rem_euclid(self.delta)
    }

    pub fn multidegree(&self, a0: i64) -> Multidegree {
        let first = self.m + self.r(a0);
        Multidegree::new(vec![first, self.d - first])
    }

    /// `(m + i, d − m − i)` for `0 ≤ i < δ`.
    pub fn progression(&self) -> Vec<Multidegree> {
        (0..self.delta).map(|i| Multidegree::new(vec![self.m + i, self.d - self.m - i])).collect()
    }

    /// The progression is all of the balanced set exactly when `m_{C1}(d)` is
    /// not an integer.
    pub fn is_complete(&self) -> bool {
        !self.lower.is_integer()
    }
}

pub fn vine_parameters(host: &DualGraph, d: i64) -> Result<VineParameters> {
    if host.vertex_count() != 2 {
        return Err(Error::NotTwoComponent);
    }
    require_stable(host)?;
    if d < 1 {
        return Err(Error::InvalidArgument(format!("degree must be positive, got {d}")));
    }
    let g = host.genus();
    let delta = host.edges().iter().filter(|e| !e.is_loop()).count() as i64;
    let lower = Ratio::new(d * host.omega_degree(0), 2 * g - 2) - Ratio::new(delta, 2);
    let m = lower.ceil().to_integer();
    Ok(VineParameters { d, delta, lower, m })
}

/// `(m + r(a0), d − m − r(a0))`, where `a0` of the `d` points lie on `C1`.
pub fn vine_abel_multidegree(host: &DualGraph, d: i64, a0: i64) -> Result<Multidegree> {
    if !(0..=d).contains(&a0) {
        return Err(Error::InvalidArgument(format!("split {a0} is outside 0..={d}")));
    }
    let params = vine_parameters(host, d)?;
    let l = params.multidegree(a0);
    if !BalanceChecker::new(host)?.is_balanced(&l)? {
        return Err(Error::InvariantViolation(format!("vine multidegree {l:?} is not balanced")));
    }
    if !params.progression().contains(&l) {
        return Err(Error::InvariantViolation(format!("vine multidegree {l:?} is off the progression")));
    }
    Ok(l)
}

/// The progression contained in the balanced set, with the flag telling
/// whether it is the whole set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VineBalanced {
    pub elements: Vec<Multidegree>,
    pub equality: bool,
}

pub fn bvine_set(host: &DualGraph, d: i64) -> Result<VineBalanced> {
    let params = vine_parameters(host, d)?;
    let elements = params.progression();
    let equality = params.is_complete();
    let set = enumerate_balanced(host, d)?;
    if !elements.iter().all(|l| set.balanced.contains(l)) {
        return Err(Error::InvariantViolation("progression is not inside the balanced set".into()));
    }
    if equality != (set.balanced.len() == elements.len()) {
        return Err(Error::InvariantViolation(format!(
            "equality flag {equality} but |B| = {} and δ = {}",
            set.balanced.len(),
            elements.len()
        )));
    }
    if equality != is_d_general(host, d)?.general {
        return Err(Error::InvariantViolation("equality flag disagrees with d-generality".into()));
    }
    Ok(VineBalanced { elements, equality })
}
