//! The Basic Inequality and balanced multidegrees.
//!
//! For a connected subcurve `Z` of a genus `g` curve and a total degree `d`,
//! `M_Z(d) = d·w_Z/(2g−2) + k_Z/2` and `m_Z(d) = M_Z(d) − k_Z` (zero on a single
//! exceptional component). A multidegree is semibalanced when every connected
//! proper subcurve has degree at least `m_Z`. All comparisons are done in exact
//! arithmetic; the checker scales both sides by `2g − 2`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{vertex_limit, DualGraph, Subcurve, VertexSet};
use crate::lattice::{canonical_representative, class_group, Multidegree};

/// Both sides of the Basic Inequality for one subcurve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicBounds {
    pub vertices: VertexSet,
    pub d: i64,
    pub upper: Ratio<i64>,
    pub lower: Ratio<i64>,
}

pub fn basic_bounds(z: &Subcurve<'_>, d: i64) -> Result<BasicBounds> {
    let g = z.host().genus();
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if !z.is_connected() {
        return Err(Error::NotConnected);
    }
    let upper = Ratio::new(d * z.w(), 2 * g - 2) + Ratio::new(z.k(), 2);
    let lower = if z.is_exceptional_component() {
        Ratio::from_integer(0)
    } else {
        upper - z.k()
    };
    Ok(BasicBounds { vertices: z.vertices(), d, upper, lower })
}

#[derive(Clone, Copy, Debug)]
struct Bound {
    set: VertexSet,
    k: i64,
    w: i64,
    exceptional: bool,
}

impl Bound {
    /// `(2g−2)·m_Z(d)`.
    fn scaled_lower(&self, d: i64, g: i64) -> i64 {
        if self.exceptional {
            0
        } else {
            d * self.w - self.k * (g - 1)
        }
    }

    /// `(2g−2)·M_Z(d)`.
    fn scaled_upper(&self, d: i64, g: i64) -> i64 {
        d * self.w + self.k * (g - 1)
    }
}

/// Precomputed connected proper subcurves of a host, for repeated Basic
/// Inequality checks.
#[derive(Clone, Debug)]
pub struct BalanceChecker<'g> {
    host: &'g DualGraph,
    bounds: Vec<Bound>,
}

impl<'g> BalanceChecker<'g> {
    pub fn new(host: &'g DualGraph) -> Result<Self> {
        if host.genus() < 2 {
            return Err(Error::GenusTooSmall(host.genus()));
        }
        let bounds = host
            .connected_subcurves(true, vertex_limit())?
            .iter()
            .map(|z| Bound {
                set: z.vertices(),
                k: z.k(),
                w: z.w(),
                exceptional: z.is_exceptional_component(),
            })
            .collect();
        Ok(BalanceChecker { host, bounds })
    }

    pub fn host(&self) -> &'g DualGraph {
        self.host
    }

    fn scale(&self) -> i64 {
        2 * self.host.genus() - 2
    }

    /// Lower bounds only; the upper bounds follow by passing to complements.
    pub fn is_semibalanced(&self, l: &Multidegree) -> Result<bool> {
        l.check_host(self.host)?;
        let (d, g, s) = (l.total(), self.host.genus(), self.scale());
        Ok(self.bounds.iter().all(|b| l.degree_on(b.set) * s >= b.scaled_lower(d, g)))
    }

    /// Both sides of the inequality on every connected proper subcurve.
    pub fn is_semibalanced_two_sided(&self, l: &Multidegree) -> Result<bool> {
        l.check_host(self.host)?;
        let (d, g, s) = (l.total(), self.host.genus(), self.scale());
        Ok(self.bounds.iter().all(|b| {
            let deg = l.degree_on(b.set) * s;
            b.scaled_lower(d, g) <= deg && deg <= b.scaled_upper(d, g)
        }))
    }

    pub fn is_balanced(&self, l: &Multidegree) -> Result<bool> {
        Ok(self.is_semibalanced(l)?
            && self.host.exceptional_vertices().iter().all(|v| l[v] == 1))
    }

    /// Balanced, and the lower bound is attained only on subcurves whose
    /// complement consists of exceptional components.
    pub fn is_stably_balanced(&self, l: &Multidegree) -> Result<bool> {
        if !self.is_balanced(l)? {
            return Ok(false);
        }
        let (d, g, s) = (l.total(), self.host.genus(), self.scale());
        let n = self.host.vertex_count();
        let exceptional = self.host.exceptional_vertices();
        Ok(self.bounds.iter().all(|b| {
            l.degree_on(b.set) * s != b.scaled_lower(d, g)
                || b.set.complement(n).is_subset(exceptional)
        }))
    }

    /// Connected proper subcurves on which `l` sits exactly at the lower bound.
    pub fn extremal_subcurves(&self, l: &Multidegree) -> Result<Vec<VertexSet>> {
        l.check_host(self.host)?;
        let (d, g, s) = (l.total(), self.host.genus(), self.scale());
        Ok(self
            .bounds
            .iter()
            .filter(|b| l.degree_on(b.set) * s == b.scaled_lower(d, g))
            .map(|b| b.set)
            .collect())
    }

    /// Depth-first search over per-vertex boxes, pruning on each subcurve as
    /// soon as its last vertex is assigned.
    fn balanced_multidegrees(&self, d: i64) -> Vec<Multidegree> {
        let n = self.host.vertex_count();
        let (g, s) = (self.host.genus(), self.scale());
        if n == 1 {
            return vec![Multidegree::new(vec![d])];
        }
        let exceptional = self.host.exceptional_vertices();
        let mut ranges = Vec::with_capacity(n);
        for v in 0..n {
            if exceptional.contains(v) {
                ranges.push((1, 1));
                continue;
            }
            let b = self.bounds.iter().find(|b| b.set == VertexSet::singleton(v)).expect("singletons are connected");
            ranges.push((
                Integer::div_ceil(&b.scaled_lower(d, g), &s),
                Integer::div_floor(&b.scaled_upper(d, g), &s),
            ));
        }
        let mut by_last: Vec<Vec<Bound>> = vec![Vec::new(); n];
        for b in &self.bounds {
            let last = b.set.iter().last().expect("subcurves are nonempty");
            by_last[last].push(*b);
        }

        struct Search<'a> {
            d: i64,
            g: i64,
            s: i64,
            ranges: &'a [(i64, i64)],
            by_last: &'a [Vec<Bound>],
            values: Vec<i64>,
            out: Vec<Multidegree>,
        }
        impl Search<'_> {
            fn fits(&self, v: usize) -> bool {
                self.by_last[v].iter().all(|b| {
                    let deg: i64 = b.set.iter().map(|u| self.values[u]).sum::<i64>() * self.s;
                    b.scaled_lower(self.d, self.g) <= deg && deg <= b.scaled_upper(self.d, self.g)
                })
            }

            fn go(&mut self, v: usize, partial: i64) {
                let n = self.ranges.len();
                if v == n - 1 {
                    let last = self.d - partial;
                    let (lo, hi) = self.ranges[v];
                    if lo <= last && last <= hi {
                        self.values[v] = last;
                        if self.fits(v) {
                            self.out.push(Multidegree::new(self.values.clone()));
                        }
                    }
                    return;
                }
                let (lo, hi) = self.ranges[v];
                for x in lo..=hi {
                    self.values[v] = x;
                    if self.fits(v) {
                        self.go(v + 1, partial + x);
                    }
                }
            }
        }

        let mut search = Search {
            d,
            g,
            s,
            ranges: &ranges,
            by_last: &by_last,
            values: vec![0; n],
            out: Vec::new(),
        };
        search.go(0, 0);
        search.out
    }
}

pub fn is_semibalanced(host: &DualGraph, l: &Multidegree) -> Result<bool> {
    let checker = BalanceChecker::new(host)?;
    let lower_only = checker.is_semibalanced(l)?;
    let two_sided = checker.is_semibalanced_two_sided(l)?;
    if lower_only != two_sided {
        return Err(Error::InvariantViolation(format!(
            "lower-bound check ({lower_only}) disagrees with two-sided check ({two_sided}) on {l:?}"
        )));
    }
    Ok(lower_only)
}

pub fn is_balanced(host: &DualGraph, l: &Multidegree) -> Result<bool> {
    let checker = BalanceChecker::new(host)?;
    let balanced = checker.is_balanced(l)?;
    if host.is_stable() && balanced != checker.is_semibalanced(l)? {
        return Err(Error::InvariantViolation("semibalanced but not balanced on a stable curve".into()));
    }
    Ok(balanced)
}

pub fn is_stably_balanced(host: &DualGraph, l: &Multidegree) -> Result<bool> {
    BalanceChecker::new(host)?.is_stably_balanced(l)
}

/// The balanced multidegrees of total degree `d` and the stably balanced
/// subset, both in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSet {
    pub d: i64,
    pub balanced: Vec<Multidegree>,
    pub stably_balanced: Vec<Multidegree>,
}

impl BalancedSet {
    pub fn is_d_general(&self) -> bool {
        self.balanced.len() == self.stably_balanced.len()
    }

    /// First balanced multidegree that is not stably balanced.
    pub fn witness(&self) -> Option<&Multidegree> {
        self.balanced.iter().find(|l| self.stably_balanced.binary_search(l).is_err())
    }
}

pub fn enumerate_balanced(host: &DualGraph, d: i64) -> Result<BalancedSet> {
    if host.genus() < 2 {
        return Err(Error::GenusTooSmall(host.genus()));
    }
    if !host.is_quasistable() {
        return Err(Error::NotQuasistable);
    }
    let checker = BalanceChecker::new(host)?;
    let mut balanced = checker.balanced_multidegrees(d);
    balanced.sort();
    for l in &balanced {
        if !checker.is_balanced(l)? {
            return Err(Error::InvariantViolation(format!("enumeration produced unbalanced {l:?}")));
        }
    }
    let mut stably_balanced = Vec::new();
    for l in &balanced {
        if checker.is_stably_balanced(l)? {
            stably_balanced.push(l.clone());
        }
    }
    Ok(BalancedSet { d, balanced, stably_balanced })
}

/// The map sending a balanced multidegree to its class in the degree class
/// group, grouped by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMapReport {
    pub d: i64,
    pub class_count: num_bigint::BigInt,
    /// Canonical class representative ↦ balanced multidegrees in that class.
    pub fibers: BTreeMap<Multidegree, Vec<Multidegree>>,
    pub surjective: bool,
    pub injective: bool,
}

impl ClassMapReport {
    pub fn is_bijective(&self) -> bool {
        self.surjective && self.injective
    }
}

/// Classes are compared through base-reduced representatives at the first
/// vertex; the balanced set determines the image.
pub fn class_map_from(host: &DualGraph, set: &BalancedSet) -> Result<ClassMapReport> {
    let mut fibers: BTreeMap<Multidegree, Vec<Multidegree>> = BTreeMap::new();
    for l in &set.balanced {
        fibers.entry(canonical_representative(host, l, 0)?).or_default().push(l.clone());
    }
    let class_count = class_group(host).order;
    let surjective = num_bigint::BigInt::from(fibers.len()) == class_count;
    let injective = fibers.values().all(|f| f.len() == 1);
    Ok(ClassMapReport { d: set.d, class_count, fibers, surjective, injective })
}

pub fn class_map_analysis(host: &DualGraph, d: i64) -> Result<ClassMapReport> {
    if !host.is_stable() {
        return Err(Error::NotStable);
    }
    class_map_from(host, &enumerate_balanced(host, d)?)
}

/// Outcome of the d-generality test with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generality {
    pub d: i64,
    pub general: bool,
    /// A balanced multidegree that is not stably balanced, when not general.
    pub witness: Option<Multidegree>,
}

/// Decides d-generality twice, by bijectivity of the class map and by
/// `B̃ = B`, and fails if the two disagree.
pub fn is_d_general(host: &DualGraph, d: i64) -> Result<Generality> {
    if !host.is_stable() {
        return Err(Error::NotStable);
    }
    let set = enumerate_balanced(host, d)?;
    let map = class_map_from(host, &set)?;
    if !map.surjective {
        return Err(Error::InvariantViolation(format!("class map in degree {d} is not surjective")));
    }
    if map.is_bijective() != set.is_d_general() {
        return Err(Error::InvariantViolation(format!(
            "degree {d}: class map bijective = {}, every balanced multidegree stably balanced = {}",
            map.is_bijective(),
            set.is_d_general()
        )));
    }
    Ok(Generality { d, general: set.is_d_general(), witness: set.witness().cloned() })
}

/// `gcd(d − g + 1, 2g − 2) = 1`: every stable curve of genus `g` is d-general.
pub fn arithmetic_generality_criterion(g: i64, d: i64) -> bool {
    (d - g + 1).gcd(&(2 * g - 2)) == 1
}

/// First connected proper subcurve (lexicographic order) with `w_Z = g − 1`,
/// `k_Z` odd and connected complement.
pub fn half_canonical_subcurve(host: &DualGraph) -> Result<Option<Subcurve<'_>>> {
    let g = host.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(host.connected_subcurves(true, vertex_limit())?.into_iter().find(|z| {
        z.w() == g - 1 && z.k() % 2 == 1 && z.complement().is_some_and(|c| c.is_connected())
    }))
}

/// A subcurve as in [`half_canonical_subcurve`], present exactly when the
/// curve is not 1-general. The answer is checked against the balanced-set
/// test.
pub fn sigma1_witness(host: &DualGraph) -> Result<Option<Subcurve<'_>>> {
    if !host.is_stable() {
        return Err(Error::NotStable);
    }
    let witness = half_canonical_subcurve(host)?;
    let general = is_d_general(host, 1)?.general;
    if general == witness.is_some() {
        return Err(Error::InvariantViolation(format!(
            "1-general = {general} but subcurve witness found = {}",
            witness.is_some()
        )));
    }
    Ok(witness)
}

/// Identifies semibalanced multidegrees that define the same point once
/// degree-0 exceptional components are contracted.
#[derive(Clone, Debug)]
pub struct EquivalenceKey {
    /// The host with degree-0 exceptional components contracted.
    pub host: DualGraph,
    /// Degrees on the non-exceptional components of `host`.
    pub restricted: BTreeMap<String, i64>,
    /// Exceptional components of `host`; each carries degree 1.
    pub exceptional: Vec<String>,
}

impl PartialEq for EquivalenceKey {
    fn eq(&self, other: &Self) -> bool {
        self.host.same_structure(&other.host)
            && self.restricted == other.restricted
            && self.exceptional == other.exceptional
    }
}

impl Eq for EquivalenceKey {}

impl EquivalenceKey {
    pub fn total(&self) -> i64 {
        self.restricted.values().sum::<i64>() + self.exceptional.len() as i64
    }
}

pub fn equivalence_key(host: &DualGraph, l: &Multidegree) -> Result<EquivalenceKey> {
    if !host.is_quasistable() {
        return Err(Error::NotQuasistable);
    }
    if !is_semibalanced(host, l)? {
        return Err(Error::NotSemibalanced);
    }
    let mut degrees = l.to_map(host);
    let mut current = host.clone();
    while let Some(v) = current
        .exceptional_vertices()
        .iter()
        .find(|&v| degrees[&current.vertex(v).id] == 0)
    {
        degrees.remove(&current.vertex(v).id);
        current = current.contract_exceptional(v)?;
    }
    let exceptional = current.ids(current.exceptional_vertices());
    for id in &exceptional {
        degrees.remove(id);
    }
    let key = EquivalenceKey { host: current, restricted: degrees, exceptional };
    debug_assert_eq!(key.total(), l.total());
    Ok(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::classes_equal;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn banana(genera: (u32, u32), edges: usize) -> DualGraph {
        let names: Vec<String> = (1..=edges).map(|i| format!("e{i}")).collect();
        DualGraph::new(
            [("C1", genera.0), ("C2", genera.1)],
            names.iter().map(|e| (e.as_str(), "C1", "C2")),
        )
        .unwrap()
    }

    fn g1() -> DualGraph {
        DualGraph::new([("C1", 2)], Vec::<(&str, &str, &str)>::new()).unwrap()
    }

    fn g3() -> DualGraph {
        DualGraph::new([("C1", 1), ("C2", 2)], [("r", "C1", "C2")]).unwrap()
    }

    /// Semibalancedness straight from the rational bounds, every connected
    /// proper subset, both sides.
    fn semibalanced_by_definition(host: &DualGraph, l: &Multidegree) -> bool {
        let n = host.vertex_count();
        (1..(1u64 << n) - 1).map(VertexSet::from_bits).all(|s| {
            let z = host.subcurve(s).unwrap();
            if !z.is_connected() {
                return true;
            }
            let b = basic_bounds(&z, l.total()).unwrap();
            let deg = Ratio::from_integer(l.degree_on(s));
            b.lower <= deg && deg <= b.upper
        })
    }

    /// All vectors of total `d` in the box `[−r, r]^n`.
    fn box_vectors(n: usize, d: i64, r: i64) -> Vec<Multidegree> {
        let mut out = Vec::new();
        let mut cur = vec![-r; n];
        loop {
            if cur.iter().sum::<i64>() == d {
                out.push(md(&cur));
            }
            let mut i = 0;
            while i < n && cur[i] == r {
                cur[i] = -r;
                i += 1;
            }
            if i == n {
                return out;
            }
            cur[i] += 1;
        }
    }

    #[test]
    fn bounds_examples() {
        let g2 = banana((0, 0), 3);
        let z = g2.subcurve_by_ids(&["C1"]).unwrap();
        let b = basic_bounds(&z, 1).unwrap();
        assert_eq!((b.upper, b.lower), (Ratio::from_integer(2), Ratio::from_integer(-1)));

        let blown = g2.blow_up("e1").unwrap();
        let e = blown.graph.subcurve_by_ids(&[blown.exceptional.as_str()]).unwrap();
        for d in -3..4 {
            assert_eq!(basic_bounds(&e, d).unwrap().lower, Ratio::from_integer(0));
        }

        let g4 = banana((1, 2), 2);
        let z = g4.subcurve_by_ids(&["C1"]).unwrap();
        let b = basic_bounds(&z, 2).unwrap();
        assert_eq!((b.upper, b.lower), (Ratio::new(5, 3), Ratio::new(-1, 3)));

        let torus = DualGraph::new([("C1", 1)], Vec::<(&str, &str, &str)>::new()).unwrap();
        let whole = torus.subcurve(torus.all_vertices()).unwrap();
        assert!(matches!(basic_bounds(&whole, 0), Err(Error::GenusTooSmall(1))));
        let path = DualGraph::new([("A", 1), ("B", 1), ("C", 1)], [("x", "A", "B"), ("y", "B", "C")]).unwrap();
        let split = path.subcurve_by_ids(&["A", "C"]).unwrap();
        assert!(matches!(basic_bounds(&split, 0), Err(Error::NotConnected)));
    }

    #[test]
    fn semibalanced_examples() {
        let g2 = banana((0, 0), 3);
        assert!(is_semibalanced(&g2, &md(&[0, 1])).unwrap());
        assert!(!is_semibalanced(&g2, &md(&[3, -2])).unwrap());
        // blow-up of the bridge: C1, C2, E with degree 0 on E
        let blown = g3().blow_up("r").unwrap().graph;
        assert_eq!(blown.ids(blown.all_vertices()), ["C1", "C2", "E_r"]);
        let l = md(&[0, 1, 0]);
        assert!(is_semibalanced(&blown, &l).unwrap());
        assert!(!is_balanced(&blown, &l).unwrap());
        // m_{C2}(1) = 3/4 − 1/2 > 0, so no degree-1 multidegree is balanced here
        assert!(!is_semibalanced(&blown, &md(&[0, 0, 1])).unwrap());
        assert!(enumerate_balanced(&blown, 1).unwrap().balanced.is_empty());
    }

    #[test]
    fn balanced_and_stably_balanced() {
        let g2 = banana((0, 0), 3);
        assert!(is_balanced(&g2, &md(&[-1, 2])).unwrap());
        assert!(!is_stably_balanced(&g2, &md(&[-1, 2])).unwrap());
        assert!(is_balanced(&g2, &md(&[0, 1])).unwrap());
        assert!(is_stably_balanced(&g2, &md(&[0, 1])).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let g2 = banana((0, 0), 3);
        let set = enumerate_balanced(&g2, 1).unwrap();
        assert_eq!(set.balanced, [md(&[-1, 2]), md(&[0, 1]), md(&[1, 0]), md(&[2, -1])]);
        assert_eq!(set.stably_balanced, [md(&[0, 1]), md(&[1, 0])]);

        let g5 = banana((0, 0), 4);
        let set = enumerate_balanced(&g5, 1).unwrap();
        assert_eq!(set.balanced.len(), 4);
        assert_eq!(set.balanced, set.stably_balanced);

        for d in -2..5 {
            let set = enumerate_balanced(&g1(), d).unwrap();
            assert_eq!(set.balanced, [md(&[d])]);
            assert_eq!(set.stably_balanced, [md(&[d])]);
        }

        let unstable = DualGraph::new([("A", 0), ("B", 2)], [("x", "A", "B")]).unwrap();
        assert!(matches!(enumerate_balanced(&unstable, 1), Err(Error::NotQuasistable)));
    }

    /// The search must agree with filtering a box by the rational definition.
    #[test]
    fn enumeration_matches_box_filter() {
        let graphs = [
            banana((0, 0), 3),
            banana((1, 2), 2),
            g3(),
            g3().blow_up("r").unwrap().graph,
            banana((0, 0), 3).blow_up("e2").unwrap().graph,
            DualGraph::new(
                [("A", 0), ("B", 0), ("C", 1)],
                [("x", "A", "B"), ("y", "A", "B"), ("z", "A", "C"), ("t", "B", "C"), ("l", "C", "C")],
            )
            .unwrap(),
        ];
        for host in &graphs {
            let exceptional = host.exceptional_vertices();
            for d in -1..=2 * host.genus() {
                let mut expected: Vec<Multidegree> = box_vectors(host.vertex_count(), d, 7)
                    .into_iter()
                    .filter(|l| semibalanced_by_definition(host, l))
                    .filter(|l| exceptional.iter().all(|v| l[v] == 1))
                    .collect();
                expected.sort();
                let set = enumerate_balanced(host, d).unwrap();
                assert_eq!(set.balanced, expected, "{host:?} d={d}");
            }
        }
    }

    #[test]
    fn lower_bounds_imply_upper_bounds() {
        let host = banana((0, 1), 3).blow_up("e1").unwrap().graph;
        let checker = BalanceChecker::new(&host).unwrap();
        for d in 0..4 {
            for l in box_vectors(3, d, 5) {
                assert_eq!(
                    checker.is_semibalanced(&l).unwrap(),
                    checker.is_semibalanced_two_sided(&l).unwrap()
                );
            }
        }
    }

    #[test]
    fn class_map_examples() {
        let g2 = banana((0, 0), 3);
        let report = class_map_analysis(&g2, 1).unwrap();
        assert!(report.surjective && !report.injective);
        assert_eq!(report.class_count, 3.into());
        let fiber = report
            .fibers
            .values()
            .find(|f| f.contains(&md(&[-1, 2])))
            .unwrap();
        assert_eq!(fiber, &[md(&[-1, 2]), md(&[2, -1])]);
        assert!(classes_equal(&g2, &md(&[-1, 2]), &md(&[2, -1])).unwrap());

        assert!(class_map_analysis(&g1(), 1).unwrap().is_bijective());
        assert!(class_map_analysis(&banana((0, 0), 4), 1).unwrap().is_bijective());
        let blown = g2.blow_up("e1").unwrap().graph;
        assert!(matches!(class_map_analysis(&blown, 1), Err(Error::NotStable)));
    }

    #[test]
    fn generality_examples() {
        let g2 = banana((0, 0), 3);
        let verdict = is_d_general(&g2, 1).unwrap();
        assert!(!verdict.general);
        assert_eq!(verdict.witness, Some(md(&[-1, 2])));
        assert!(is_d_general(&g3(), 1).unwrap().general);
        // gcd(0, 4) = 4, so only the direct test decides
        let g5 = banana((0, 0), 4);
        assert!(!arithmetic_generality_criterion(3, 2));
        let direct = is_d_general(&g5, 2).unwrap();
        let set = enumerate_balanced(&g5, 2).unwrap();
        assert_eq!(direct.general, set.balanced == set.stably_balanced);
        assert!(!direct.general);
    }

    #[test]
    fn arithmetic_criterion() {
        assert!(arithmetic_generality_criterion(3, 1));
        assert!(!arithmetic_generality_criterion(2, 1));
        for g in (2..20).step_by(2) {
            assert!(!arithmetic_generality_criterion(g, 1));
        }
    }

    #[test]
    fn sigma1_examples() {
        let g2 = banana((0, 0), 3);
        let z = sigma1_witness(&g2).unwrap().unwrap();
        assert_eq!(z.ids(), ["C1"]);
        assert!(sigma1_witness(&g3()).unwrap().is_none());
        let g = banana((1, 1), 3);
        assert_eq!(g.genus(), 4);
        let z = sigma1_witness(&g).unwrap().unwrap();
        assert_eq!((z.ids(), z.w(), z.k()), (vec!["C1".to_string()], 3, 3));
    }

    #[test]
    fn equivalence_examples() {
        let g2 = banana((0, 0), 3);
        let key = equivalence_key(&g2, &md(&[0, 1])).unwrap();
        assert!(key.host.same_structure(&g2));
        assert!(key.exceptional.is_empty());

        let blown = g2.blow_up("e1").unwrap().graph;
        assert_eq!(blown.ids(blown.all_vertices()), ["C1", "C2", "E_e1"]);
        let key = equivalence_key(&blown, &md(&[0, 1, 0])).unwrap();
        assert!(key.host.same_structure(&g2));
        assert_eq!(key.restricted, BTreeMap::from([("C1".into(), 0), ("C2".into(), 1)]));
        assert_eq!(key, equivalence_key(&g2, &md(&[0, 1])).unwrap());

        let key = equivalence_key(&blown, &md(&[0, 0, 1])).unwrap();
        assert!(key.host.same_structure(&blown));
        assert_eq!(key.restricted, BTreeMap::from([("C1".into(), 0), ("C2".into(), 0)]));
        assert_eq!(key.exceptional, ["E_e1"]);
        assert_eq!(key.total(), 1);

        assert!(matches!(equivalence_key(&g2, &md(&[3, -2])), Err(Error::NotSemibalanced)));
    }
}
