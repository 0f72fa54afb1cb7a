//! Random stable graphs and the invariant suite run over them.
//!
//! Generation is deterministic per seed: a random spanning tree, extra edges
//! and loops up to the target cycle rank, the remaining genus spread over the
//! vertices, and rejection of anything that is not stable.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abel::{
    abel_fibers, abel_image, abel_multidegree, bvine_set, comparator_partition, sample_points,
    vine_abel_multidegree,
};
use crate::balanced::{
    arithmetic_generality_criterion, enumerate_balanced, is_d_general, sigma1_witness, BalanceChecker,
};
use crate::error::{Error, Result};
use crate::graph::{tail_pair_relation, vertex_limit, DualGraph, PointOnCurve, Tail, TailSize};
use crate::lattice::{class_group, spanning_tree_count, tail_twister_multidegree, twister_multidegree, Multidegree};

/// Rejected attempts allowed per emitted graph before giving up.
const MAX_ATTEMPTS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    /// Inclusive arithmetic genus range.
    pub genus: [i64; 2],
    /// Inclusive vertex count range.
    pub vertices: [usize; 2],
    pub max_edges: usize,
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_loop_probability")]
    pub loop_probability: f64,
}

fn default_loop_probability() -> f64 {
    0.15
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        let [gmin, gmax] = self.genus;
        let [vmin, vmax] = self.vertices;
        if gmin < 2 {
            return Err(Error::Spec(format!("genus must be at least 2, got range [{gmin}, {gmax}]")));
        }
        if gmin > gmax {
            return Err(Error::Spec(format!("empty genus range [{gmin}, {gmax}]")));
        }
        if vmin < 1 || vmin > vmax {
            return Err(Error::Spec(format!("bad vertex range [{vmin}, {vmax}]")));
        }
        if vmax > 64 {
            return Err(Error::Spec(format!("at most 64 vertices are supported, got {vmax}")));
        }
        if !(0.0..=1.0).contains(&self.loop_probability) {
            return Err(Error::Spec(format!("loop probability {} is outside [0, 1]", self.loop_probability)));
        }
        if self.count > 0 && self.shapes().is_empty() {
            return Err(Error::Spec(
                "no (genus, vertex count) pair admits a stable graph within the edge cap".into(),
            ));
        }
        Ok(())
    }

    /// Feasible `(genus, vertex count)` pairs: a stable graph of genus `g` has
    /// at most `2g − 2` vertices and needs at least `n − 1` edges.
    fn shapes(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for g in self.genus[0]..=self.genus[1] {
            for n in self.vertices[0]..=self.vertices[1] {
                let fits = n == 1 || (n as i64) <= 2 * g - 2;
                if fits && n - 1 <= self.max_edges {
                    out.push((g, n));
                }
            }
        }
        out
    }
}

/// `count` stable graphs, deterministic in the spec.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<DualGraph>> {
    spec.validate()?;
    let shapes = spec.shapes();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let &(g, n) = shapes.choose(&mut rng).expect("validated nonempty");
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            if let Some(graph) = attempt(&mut rng, g, n, spec)? {
                found = Some(graph);
                break;
            }
        }
        match found {
            Some(graph) => out.push(graph),
            None => {
                return Err(Error::Spec(format!(
                    "no stable graph of genus {g} on {n} vertices found within the edge cap"
                )))
            }
        }
    }
    Ok(out)
}

fn attempt(rng: &mut ChaCha8Rng, g: i64, n: usize, spec: &CorpusSpec) -> Result<Option<DualGraph>> {
    let tree_edges = n - 1;
    let max_rank = (g as usize).min(spec.max_edges - tree_edges);
    let rank = rng.gen_range(0..=max_rank);
    let mut genera = vec![0u32; n];
    for _ in 0..(g as usize - rank) {
        genera[rng.gen_range(0..n)] += 1;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    let mut valence = vec![0usize; n];
    for &(a, b) in &edges {
        valence[a] += 1;
        valence[b] += 1;
    }
    for _ in 0..rank {
        // favour rational vertices that are still short of three branches
        let needy: Vec<usize> = (0..n).filter(|&v| genera[v] == 0 && valence[v] < 3).collect();
        let pick = |rng: &mut ChaCha8Rng| {
            if !needy.is_empty() && rng.gen_bool(0.7) {
                *needy.choose(rng).expect("nonempty")
            } else {
                rng.gen_range(0..n)
            }
        };
        let a = pick(rng);
        let b = if n == 1 || rng.gen_bool(spec.loop_probability) {
            a
        } else {
            let mut b = pick(rng);
            while b == a {
                b = rng.gen_range(0..n);
            }
            b
        };
        valence[a] += 1;
        valence[b] += 1;
        edges.push((a, b));
    }
    let id = |v: usize| format!("C{}", v + 1);
    let graph = DualGraph::new(
        (0..n).map(|v| (id(v), genera[v])),
        edges.iter().enumerate().map(|(i, &(a, b))| (format!("e{}", i + 1), id(a), id(b))),
    )?;
    debug_assert_eq!(graph.genus(), g);
    Ok(graph.is_stable().then_some(graph))
}

/// One failed check on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph: usize,
    pub check: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub graphs: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

type Check = fn(&DualGraph) -> Result<()>;

/// Every invariant check, by name.
pub const CHECKS: &[(&str, Check)] = &[
    ("omega-degree-sum", check_omega_sum),
    ("tails", check_tails),
    ("tail-chains", check_tail_chains),
    ("class-group", check_class_group),
    ("balanced", check_balanced),
    ("one-general", check_one_general),
    ("abel", check_abel),
    ("fibers", check_fibers),
    ("vine", check_vine),
];

/// Runs [`CHECKS`] over every graph. Errors raised by a check count as
/// violations.
pub fn run_suite(graphs: &[DualGraph]) -> SuiteReport {
    let mut report = SuiteReport { graphs: graphs.len(), ..Default::default() };
    for (i, graph) in graphs.iter().enumerate() {
        for (name, check) in CHECKS {
            report.checks += 1;
            if let Err(e) = check(graph) {
                report.violations.push(Violation { graph: i, check: name.to_string(), message: e.to_string() });
            }
        }
    }
    report
}

fn violated(message: String) -> Result<()> {
    Err(Error::InvariantViolation(message))
}

/// `Σ w_v = 2g − 2`, and `w_Z ≥ 0` on every connected subcurve.
pub fn check_omega_sum(host: &DualGraph) -> Result<()> {
    let sum: i64 = (0..host.vertex_count()).map(|v| host.omega_degree(v)).sum();
    if sum != 2 * host.genus() - 2 {
        return violated(format!("Σ w_v = {sum}, genus {}", host.genus()));
    }
    for z in host.connected_subcurves(true, vertex_limit())? {
        if z.w() < 0 || (z.w() == 0 && !z.vertices().is_subset(host.exceptional_vertices())) {
            return violated(format!("w = {} on {:?}", z.w(), z.ids()));
        }
    }
    Ok(())
}

/// Pairwise tail relations, complementary genera and complementary twisters.
pub fn check_tails(host: &DualGraph) -> Result<()> {
    let tails = host.tails();
    for a in &tails {
        for b in &tails {
            tail_pair_relation(a, b)?;
        }
        let other = tails
            .iter()
            .find(|b| b.bridge == a.bridge && b.vertices() != a.vertices())
            .expect("tails come in pairs");
        if a.genus() + other.genus() != host.genus() {
            return violated(format!("tail genera {} + {} ≠ g", a.genus(), other.genus()));
        }
        let sum = tail_twister_multidegree(host, &[(a, 1), (other, 1)])?;
        if sum.values().iter().any(|&x| x != 0) {
            return violated("twisters of complementary tails do not cancel".into());
        }
        let direct = twister_multidegree(host, &indicator(host, a))?;
        if direct != tail_twister_multidegree(host, &[(a, 1)])? {
            return violated(format!("tail twister of {:?} differs from its lattice twister", a.subcurve.ids()));
        }
    }
    Ok(())
}

fn indicator(host: &DualGraph, t: &Tail<'_>) -> Vec<i64> {
    (0..host.vertex_count()).map(|v| t.vertices().contains(v) as i64).collect()
}

/// All strictly increasing chains of tails.
pub fn tail_chains<'g>(tails: &[Tail<'g>]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..tails.len()).collect();
    order.sort_by_key(|&i| tails[i].vertices().len());
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = order.iter().map(|&i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = tails[*chain.last().expect("nonempty")].vertices();
        for &j in &order {
            let next = tails[j].vertices();
            if last.is_subset(next) && last != next {
                let mut longer = chain.clone();
                longer.push(j);
                stack.push(longer);
            }
        }
        out.push(chain);
    }
    out.sort();
    out
}

/// For a chain of tails and a connected proper subcurve `Z`, the twister of
/// the chain has degree in `[−1, 1]` on `Z`; `±1` happens exactly when one
/// generating node of the chain joins `Z` to its complement, `−1` when `Z`
/// lies in that tail and `+1` when it lies in the complement.
pub fn check_tail_chains(host: &DualGraph) -> Result<()> {
    let tails = host.tails();
    let subcurves = host.connected_subcurves(true, vertex_limit())?;
    for chain in tail_chains(&tails) {
        let terms: Vec<(&Tail, i64)> = chain.iter().map(|&i| (&tails[i], 1)).collect();
        let twister = tail_twister_multidegree(host, &terms)?;
        for z in &subcurves {
            let deg = twister.degree_on(z.vertices());
            let boundary = host.boundary_edges(z.vertices());
            let crossing: Vec<usize> =
                chain.iter().copied().filter(|&i| boundary.contains(&tails[i].bridge)).collect();
            let expected = match crossing.as_slice() {
                [j] if z.vertices().is_subset(tails[*j].vertices()) => -1,
                [_] => 1,
                _ => 0,
            };
            if deg != expected {
                return violated(format!(
                    "chain {:?} has degree {deg} on {:?}, expected {expected}",
                    chain.iter().map(|&i| tails[i].subcurve.ids()).collect::<Vec<_>>(),
                    z.ids()
                ));
            }
        }
    }
    Ok(())
}

pub fn check_class_group(host: &DualGraph) -> Result<()> {
    let group = class_group(host);
    let trees = spanning_tree_count(host);
    if group.order != trees {
        return violated(format!("class group order {} but {} spanning trees", group.order, trees));
    }
    Ok(())
}

/// For each `0 ≤ d ≤ 2g − 2`: the class map is onto, both generality tests
/// agree, the arithmetic criterion implies generality, and the lower-bound
/// and two-sided semibalanced checks agree on the enumeration box.
pub fn check_balanced(host: &DualGraph) -> Result<()> {
    let g = host.genus();
    let checker = BalanceChecker::new(host)?;
    for d in 0..=2 * g - 2 {
        let verdict = is_d_general(host, d)?;
        if arithmetic_generality_criterion(g, d) && !verdict.general {
            return violated(format!("gcd criterion holds for d = {d} but the curve is not d-general"));
        }
        let set = enumerate_balanced(host, d)?;
        if set.balanced.is_empty() {
            return violated(format!("no balanced multidegree of degree {d}"));
        }
        for l in &set.balanced {
            let shifted: Vec<Multidegree> = (0..host.vertex_count())
                .flat_map(|v| {
                    (0..host.vertex_count()).filter(move |&u| u != v).map(move |u| {
                        let mut m = l.clone();
                        m.add_at(v, 1);
                        m.add_at(u, -1);
                        m
                    })
                })
                .collect();
            for m in std::iter::once(l).chain(&shifted) {
                if checker.is_semibalanced(m)? != checker.is_semibalanced_two_sided(m)? {
                    return violated(format!("one- and two-sided checks disagree on {m:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Odd genus forces 1-generality, and the subcurve witness matches the
/// balanced-set test.
pub fn check_one_general(host: &DualGraph) -> Result<()> {
    let general = is_d_general(host, 1)?.general;
    if host.genus() % 2 == 1 && !general {
        return violated("odd genus but not 1-general".into());
    }
    match sigma1_witness(host)? {
        Some(z) => {
            let c = z.complement().expect("proper");
            if z.w() != host.genus() - 1 || z.k() % 2 != 1 || !c.is_connected() {
                return violated(format!("bad witness {:?}", z.ids()));
            }
        }
        None if !general => return violated("not 1-general but no witness".into()),
        None => {}
    }
    Ok(())
}

/// Abel multidegrees are semibalanced; `O(p)` alone is semibalanced exactly
/// off the small tails; images at nodes are boundary points exactly at
/// nonseparating nodes; image multidegrees agree with the Abel multidegree.
pub fn check_abel(host: &DualGraph) -> Result<()> {
    let checker = BalanceChecker::new(host)?;
    let small: Vec<Tail> = host.tails().into_iter().filter(|t| t.size == TailSize::Small).collect();
    for v in host.vertices() {
        let p = PointOnCurve::smooth(v.id.clone(), "p");
        let l = abel_multidegree(host, &p)?;
        if !checker.is_semibalanced(&l)? {
            return violated(format!("Abel multidegree of {p} is not semibalanced"));
        }
        let plain = Multidegree::indicator(host.vertex_count(), host.vertex_index(&v.id)?);
        let in_small = small.iter().any(|t| t.vertices().contains(host.vertex_index(&v.id).unwrap()));
        if checker.is_semibalanced(&plain)? == in_small {
            return violated(format!("O({p}) semibalanced = {}, in a small tail = {in_small}", !in_small));
        }
        let image = abel_image(host, &p)?;
        if image.multidegree != l {
            return violated(format!("image multidegree of {p} differs from its Abel multidegree"));
        }
    }
    for (e, edge) in host.edges().iter().enumerate() {
        let image = abel_image(host, &PointOnCurve::node(edge.id.clone()))?;
        if image.boundary == host.is_bridge(e) {
            return violated(format!("node {}: boundary = {}, bridge = {}", edge.id, image.boundary, host.is_bridge(e)));
        }
    }
    Ok(())
}

/// On 1-general curves, separating trees of lines and the image comparison
/// give the same fibers. Skipped on other curves.
pub fn check_fibers(host: &DualGraph) -> Result<()> {
    if !is_d_general(host, 1)?.general {
        return Ok(());
    }
    let points = sample_points(host, 2);
    let fibers = abel_fibers(host, &points)?;
    if fibers != comparator_partition(host, &points)? {
        return violated("fiber routes disagree".into());
    }
    Ok(())
}

/// On two-component curves: the formula is balanced for every split and
/// the progression flag matches the balanced set. Skipped otherwise.
pub fn check_vine(host: &DualGraph) -> Result<()> {
    if host.vertex_count() != 2 {
        return Ok(());
    }
    for d in 1..=2 * host.genus() - 2 {
        for a0 in 0..=d {
            vine_abel_multidegree(host, d, a0)?;
        }
        bvine_set(host, d)?;
    }
    Ok(())
}
