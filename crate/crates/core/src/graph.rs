//! Dual graphs of nodal curves.
//!
//! A [`DualGraph`] has one vertex per irreducible component, weighted by the
//! geometric genus of its normalization, and one edge per node. Self-nodes of
//! a component are loops. Vertices and edges are kept sorted by id, so vertex
//! indices follow the lexicographic order of ids and every derived listing is
//! deterministic.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices for exhaustive subcurve enumeration.
pub const DEFAULT_VERTEX_LIMIT: usize = 16;

/// Environment variable that overrides [`DEFAULT_VERTEX_LIMIT`].
pub const VERTEX_LIMIT_VAR: &str = "ABELGRAPH_MAX_VERTICES";

/// The enumeration limit in effect: `ABELGRAPH_MAX_VERTICES` when it holds a
/// number, the default otherwise.
pub fn vertex_limit() -> usize {
    std::env::var(VERTEX_LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_LIMIT)
}

/// A set of vertex indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        VertexSet::full(n).difference(self)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Sorted index tuple; the comparison key for deterministic orderings.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sort vertex sets lexicographically by their sorted index tuples.
pub fn sort_lex(sets: &mut [VertexSet]) {
    sets.sort_by_cached_key(|s| s.to_vec());
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Endpoint indices with `ends[0] <= ends[1]`; equal for a loop.
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StabilityClass {
    Stable,
    QuasistableNotStable,
    SemistableNotStable,
    NotSemistable,
}

/// Genus-weighted connected multigraph; the dual graph of a nodal curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
    adjacency: Vec<VertexSet>,
    genus: i64,
}

impl DualGraph {
    /// Builds a graph from `(id, genus)` vertices and `(id, end, end)` edges.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = (S, u32)>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut vertices: Vec<Vertex> = vertices
            .into_iter()
            .map(|(id, genus)| Vertex { id: id.into(), genus })
            .collect();
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if vertices.len() > 64 {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidGraph(format!("duplicate vertex id `{}`", w[0].id)));
            }
        }
        if vertices.iter().any(|v| v.id.is_empty()) {
            return Err(Error::InvalidGraph("empty vertex id".into()));
        }
        let lookup = |id: &str| {
            vertices
                .binary_search_by(|v| v.id.as_str().cmp(id))
                .map_err(|_| Error::InvalidGraph(format!("edge endpoint `{id}` is not a vertex")))
        };
        let mut edge_list = Vec::new();
        for (id, a, b) in edges {
            let (id, a, b): (String, String, String) = (id.into(), a.into(), b.into());
            if id.is_empty() {
                return Err(Error::InvalidGraph("empty edge id".into()));
            }
            let (a, b) = (lookup(&a)?, lookup(&b)?);
            edge_list.push(Edge { id, ends: [a.min(b), a.max(b)] });
        }
        edge_list.sort_by(|a, b| a.id.cmp(&b.id));
        for w in edge_list.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{}`", w[0].id)));
            }
        }

        let n = vertices.len();
        let mut incident = vec![Vec::new(); n];
        let mut adjacency = vec![VertexSet::EMPTY; n];
        for (i, e) in edge_list.iter().enumerate() {
            let [a, b] = e.ends;
            incident[a].push(i);
            if a != b {
                incident[b].push(i);
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
        let genus_sum: i64 = vertices.iter().map(|v| v.genus as i64).sum();
        let genus = genus_sum + edge_list.len() as i64 - n as i64 + 1;
        let graph = DualGraph { vertices, edges: edge_list, incident, adjacency, genus };
        if !graph.is_connected_set(VertexSet::full(n)) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .binary_search_by(|e| e.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownEdge(id.to_string()))
    }

    /// Edges incident to `v`; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Neighbors of `v` through non-loop edges.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn ids(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertices[v].id.clone()).collect()
    }

    pub fn set_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<VertexSet> {
        ids.iter().map(|id| self.vertex_index(id.as_ref())).collect()
    }

    /// Arithmetic genus `Σ genus(v) + |E| − |V| + 1`.
    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.incident[v].iter().filter(|&&e| self.edges[e].is_loop()).count()
    }

    /// Valence with loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.incident[v].len() + self.loop_count(v)
    }

    /// Degree of the dualizing sheaf on component `v`: `2·genus − 2 + valence`.
    pub fn omega_degree(&self, v: usize) -> i64 {
        2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64
    }

    /// Genus-0 vertex without loops meeting the rest of the curve in two points.
    pub fn is_exceptional(&self, v: usize) -> bool {
        self.vertices[v].genus == 0 && self.loop_count(v) == 0 && self.valence(v) == 2
    }

    pub fn exceptional_vertices(&self) -> VertexSet {
        (0..self.vertex_count()).filter(|&v| self.is_exceptional(v)).collect()
    }

    pub fn stability_class(&self) -> StabilityClass {
        let rational = || (0..self.vertex_count()).filter(|&v| self.vertices[v].genus == 0);
        if rational().all(|v| self.valence(v) >= 3) {
            return StabilityClass::Stable;
        }
        if !rational().all(|v| self.valence(v) >= 2) {
            return StabilityClass::NotSemistable;
        }
        let exceptional_meet = self.edges.iter().any(|e| {
            !e.is_loop() && self.is_exceptional(e.ends[0]) && self.is_exceptional(e.ends[1])
        });
        if exceptional_meet {
            StabilityClass::SemistableNotStable
        } else {
            StabilityClass::QuasistableNotStable
        }
    }

    pub fn is_stable(&self) -> bool {
        self.stability_class() == StabilityClass::Stable
    }

    pub fn is_quasistable(&self) -> bool {
        matches!(
            self.stability_class(),
            StabilityClass::Stable | StabilityClass::QuasistableNotStable
        )
    }

    pub fn is_semistable(&self) -> bool {
        self.stability_class() != StabilityClass::NotSemistable
    }

    pub fn is_connected_set(&self, set: VertexSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut reached = VertexSet::singleton(start);
        loop {
            let mut next = reached;
            for v in reached.iter() {
                next = next.union(self.adjacency[v].intersection(set));
            }
            if next == reached {
                return reached == set;
            }
            reached = next;
        }
    }

    /// Non-loop edges with exactly one endpoint in `set`.
    pub fn boundary_edges(&self, set: VertexSet) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let [a, b] = self.edges[e].ends;
                set.contains(a) != set.contains(b)
            })
            .collect()
    }

    /// Edges with both endpoints in `set`, loops included.
    pub fn internal_edge_count(&self, set: VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|e| set.contains(e.ends[0]) && set.contains(e.ends[1]))
            .count()
    }

    pub fn subcurve(&self, set: VertexSet) -> Result<Subcurve<'_>> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        if !set.is_subset(self.all_vertices()) {
            return Err(Error::InvalidArgument("vertex set exceeds the graph".into()));
        }
        Ok(Subcurve::compute(self, set))
    }

    pub fn subcurve_by_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Subcurve<'_>> {
        self.subcurve(self.set_from_ids(ids)?)
    }

    /// Every connected vertex subset, in lexicographic order of sorted index tuples.
    pub fn connected_sets(&self, proper_only: bool, limit: usize) -> Result<Vec<VertexSet>> {
        let n = self.vertex_count();
        if n > limit || n > 63 {
            return Err(Error::LimitExceeded { vertices: n, limit });
        }
        let full = self.all_vertices();
        let mut sets: Vec<VertexSet> = (1..(1u64 << n))
            .map(VertexSet::from_bits)
            .filter(|&s| !(proper_only && s == full) && self.is_connected_set(s))
            .collect();
        sort_lex(&mut sets);
        Ok(sets)
    }

    pub fn connected_subcurves(&self, proper_only: bool, limit: usize) -> Result<Vec<Subcurve<'_>>> {
        Ok(self
            .connected_sets(proper_only, limit)?
            .into_iter()
            .map(|s| Subcurve::compute(self, s))
            .collect())
    }

    /// Separating nodes: non-loop edges whose removal disconnects the graph.
    /// Returned as sorted edge indices.
    pub fn bridges(&self) -> Vec<usize> {
        struct LowLink<'a> {
            g: &'a DualGraph,
            order: Vec<usize>,
            low: Vec<usize>,
            timer: usize,
            out: Vec<usize>,
        }
        impl LowLink<'_> {
            fn visit(&mut self, v: usize, via: Option<usize>) {
                self.timer += 1;
                self.order[v] = self.timer;
                self.low[v] = self.timer;
                for &e in &self.g.incident[v] {
                    let edge = &self.g.edges[e];
                    if edge.is_loop() || Some(e) == via {
                        continue;
                    }
                    let u = edge.other(v);
                    if self.order[u] == 0 {
                        self.visit(u, Some(e));
                        self.low[v] = self.low[v].min(self.low[u]);
                        if self.low[u] > self.order[v] {
                            self.out.push(e);
                        }
                    } else {
                        self.low[v] = self.low[v].min(self.order[u]);
                    }
                }
            }
        }
        let n = self.vertex_count();
        let mut ll = LowLink { g: self, order: vec![0; n], low: vec![0; n], timer: 0, out: Vec::new() };
        ll.visit(0, None);
        let mut out = ll.out;
        out.sort_unstable();
        out
    }

    pub fn is_bridge(&self, e: usize) -> bool {
        self.bridges().binary_search(&e).is_ok()
    }

    /// Vertices reachable from `start` without crossing any edge in `removed`.
    pub fn reachable_avoiding(&self, start: usize, removed: &[usize]) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incident[v] {
                if removed.contains(&e) {
                    continue;
                }
                let u = self.edges[e].other(v);
                if !seen.contains(u) {
                    seen.insert(u);
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Connected components of the graph with all bridges removed.
    pub fn bridgeless_blocks(&self) -> Vec<VertexSet> {
        let bridges = self.bridges();
        let mut covered = VertexSet::EMPTY;
        let mut blocks = Vec::new();
        for v in 0..self.vertex_count() {
            if !covered.contains(v) {
                let block = self.reachable_avoiding(v, &bridges);
                covered = covered.union(block);
                blocks.push(block);
            }
        }
        blocks
    }

    /// Both tails of every bridge, in lexicographic order of vertex tuples.
    pub fn tails(&self) -> Vec<Tail<'_>> {
        let mut tails = Vec::new();
        for e in self.bridges() {
            let [a, b] = self.edges[e].ends;
            let side = self.reachable_avoiding(a, &[e]);
            tails.push(Tail::new(self, side, e, a, b));
            tails.push(Tail::new(self, side.complement(self.vertex_count()), e, b, a));
        }
        tails.sort_by_cached_key(|t| t.subcurve.vertices.to_vec());
        tails
    }

    /// The set Q(X): every small tail, plus one tail of genus exactly g/2 when
    /// such a tail exists (the side with the lexicographically smallest vertex
    /// tuple).
    pub fn small_tail_set(&self) -> Result<Vec<Tail<'_>>> {
        let tails = self.tails();
        let halves: Vec<&Tail> = tails.iter().filter(|t| t.size == TailSize::Half).collect();
        let mut half_bridges: Vec<usize> = halves.iter().map(|t| t.bridge).collect();
        half_bridges.dedup();
        if half_bridges.len() > 1 {
            return Err(Error::MultipleHalfNodes);
        }
        // `tails` is sorted, so the first half tail is the tie-break winner.
        let chosen_half = halves.first().map(|t| t.subcurve.vertices);
        Ok(tails
            .into_iter()
            .filter(|t| t.size == TailSize::Small || Some(t.subcurve.vertices) == chosen_half)
            .collect())
    }

    /// Genus-0 components without loops all of whose nodes are separating.
    pub fn separating_lines(&self) -> Vec<usize> {
        let bridges = self.bridges();
        (0..self.vertex_count())
            .filter(|&v| {
                self.vertices[v].genus == 0
                    && self.loop_count(v) == 0
                    && self.incident[v].iter().all(|e| bridges.binary_search(e).is_ok())
            })
            .collect()
    }

    /// Checks the defining property of a separating tree of lines: connected,
    /// arithmetic genus 0, and meeting its complement only in separating nodes.
    pub fn is_separating_tree(&self, set: VertexSet) -> bool {
        if set.is_empty() || !set.is_subset(self.all_vertices()) || !self.is_connected_set(set) {
            return false;
        }
        let sub = Subcurve::compute(self, set);
        let bridges = self.bridges();
        sub.genus == Some(0)
            && self
                .boundary_edges(set)
                .iter()
                .all(|e| bridges.binary_search(e).is_ok())
    }

    /// Maximal separating trees of lines, in lexicographic order.
    pub fn separating_trees_of_lines(&self) -> Vec<VertexSet> {
        let lines: VertexSet = self.separating_lines().into_iter().collect();
        let mut covered = VertexSet::EMPTY;
        let mut trees = Vec::new();
        for v in lines.iter() {
            if covered.contains(v) {
                continue;
            }
            let mut tree = VertexSet::singleton(v);
            loop {
                let mut next = tree;
                for u in tree.iter() {
                    next = next.union(self.adjacency[u].intersection(lines));
                }
                if next == tree {
                    break;
                }
                tree = next;
            }
            covered = covered.union(tree);
            trees.push(tree);
        }
        sort_lex(&mut trees);
        trees
    }

    fn fresh_vertex_id(&self, base: String) -> String {
        let mut id = base;
        while self.vertex_index(&id).is_ok() {
            id.push('\'');
        }
        id
    }

    fn fresh_edge_id(&self, base: String, taken: &[String]) -> String {
        let mut id = base;
        while self.edge_index(&id).is_ok() || taken.contains(&id) {
            id.push('\'');
        }
        id
    }

    /// The blow-up at a node: the edge is replaced by a new genus-0 vertex
    /// joined to both former endpoints (two parallel edges for a loop).
    pub fn blow_up(&self, edge_id: &str) -> Result<BlowUp> {
        let r = self.edge_index(edge_id)?;
        let exceptional = self.fresh_vertex_id(format!("E_{edge_id}"));
        let first = self.fresh_edge_id(format!("{edge_id}.a"), &[]);
        let second = self.fresh_edge_id(format!("{edge_id}.b"), std::slice::from_ref(&first));
        let [a, b] = self.edges[r].ends;
        let mut vertices: Vec<(String, u32)> =
            self.vertices.iter().map(|v| (v.id.clone(), v.genus)).collect();
        vertices.push((exceptional.clone(), 0));
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != r)
            .map(|(_, e)| (e.id.clone(), self.vertices[e.ends[0]].id.clone(), self.vertices[e.ends[1]].id.clone()))
            .collect();
        edges.push((first.clone(), self.vertices[a].id.clone(), exceptional.clone()));
        edges.push((second.clone(), exceptional.clone(), self.vertices[b].id.clone()));
        Ok(BlowUp {
            graph: DualGraph::new(vertices, edges)?,
            exceptional,
            node: edge_id.to_string(),
            new_edges: [first, second],
        })
    }

    /// Removes an exceptional vertex, joining its two neighbors by one edge
    /// (a loop when both edges lead to the same vertex).
    pub fn contract_exceptional(&self, v: usize) -> Result<DualGraph> {
        if !self.is_exceptional(v) {
            return Err(Error::InvalidArgument(format!(
                "vertex `{}` is not exceptional",
                self.vertices[v].id
            )));
        }
        let [e1, e2] = [self.incident[v][0], self.incident[v][1]];
        let (a, b) = (self.edges[e1].other(v), self.edges[e2].other(v));
        let merged = format!("{}+{}", self.edges[e1].id, self.edges[e2].id);
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .map(|(_, x)| (x.id.clone(), x.genus));
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e1 && i != e2)
            .map(|(_, e)| (e.id.clone(), self.vertices[e.ends[0]].id.clone(), self.vertices[e.ends[1]].id.clone()))
            .collect();
        edges.push((merged, self.vertices[a].id.clone(), self.vertices[b].id.clone()));
        DualGraph::new(vertices, edges)
    }

    /// Equality up to edge names: same vertices and genera, same multiset of
    /// endpoint pairs.
    pub fn same_structure(&self, other: &DualGraph) -> bool {
        let pairs = |g: &DualGraph| {
            let mut p: Vec<(String, String)> = g
                .edges
                .iter()
                .map(|e| (g.vertices[e.ends[0]].id.clone(), g.vertices[e.ends[1]].id.clone()))
                .collect();
            p.sort();
            p
        };
        self.vertices == other.vertices && pairs(self) == pairs(other)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexEntry { id: v.id.clone(), genus: v.genus })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeEntry {
                    id: e.id.clone(),
                    ends: [self.vertices[e.ends[0]].id.clone(), self.vertices[e.ends[1]].id.clone()],
                })
                .collect(),
        }
    }

    pub fn from_file(file: GraphFile) -> Result<Self> {
        let vertices = file.vertices.into_iter().map(|v| (v.id, v.genus));
        let edges = file.edges.into_iter().map(|e| {
            let [a, b] = e.ends;
            (e.id, a, b)
        });
        DualGraph::new(vertices, edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        DualGraph::from_file(serde_json::from_str(text)?)
    }

    /// Canonical JSON: ids sorted, endpoints of each edge sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serialization is infallible")
    }
}

/// On-disk graph format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub genus: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: DualGraph,
    /// Id of the new exceptional vertex.
    pub exceptional: String,
    /// Id of the node that was blown up.
    pub node: String,
    pub new_edges: [String; 2],
}

/// A subcurve with its cached invariants.
#[derive(Clone, Debug)]
pub struct Subcurve<'g> {
    host: &'g DualGraph,
    vertices: VertexSet,
    k: i64,
    w: i64,
    genus: Option<i64>,
    connected: bool,
}

impl<'g> Subcurve<'g> {
    fn compute(host: &'g DualGraph, vertices: VertexSet) -> Self {
        let k = host.boundary_edges(vertices).len() as i64;
        let w: i64 = vertices.iter().map(|v| host.omega_degree(v)).sum();
        let connected = host.is_connected_set(vertices);
        let genus = connected.then(|| {
            let g: i64 = vertices.iter().map(|v| host.vertices[v].genus as i64).sum();
            g + host.internal_edge_count(vertices) as i64 - vertices.len() as i64 + 1
        });
        if let Some(gz) = genus {
            assert_eq!(w, 2 * gz - 2 + k, "adjunction identity failed");
        }
        Subcurve { host, vertices, k, w, genus, connected }
    }

    pub fn host(&self) -> &'g DualGraph {
        self.host
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    /// Number of points where the subcurve meets its complement.
    pub fn k(&self) -> i64 {
        self.k
    }

    /// Degree of the dualizing sheaf on the subcurve.
    pub fn w(&self) -> i64 {
        self.w
    }

    /// Arithmetic genus; `None` for disconnected subcurves.
    pub fn genus(&self) -> Option<i64> {
        self.genus
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_proper(&self) -> bool {
        self.vertices != self.host.all_vertices()
    }

    /// True for a single exceptional vertex.
    pub fn is_exceptional_component(&self) -> bool {
        self.vertices.len() == 1 && self.host.is_exceptional(self.vertices.first().unwrap())
    }

    pub fn ids(&self) -> Vec<String> {
        self.host.ids(self.vertices)
    }

    pub fn complement(&self) -> Option<Subcurve<'g>> {
        let c = self.vertices.complement(self.host.vertex_count());
        (!c.is_empty()).then(|| Subcurve::compute(self.host, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TailSize {
    Small,
    Large,
    Half,
}

/// One side of a separating node.
#[derive(Clone, Debug)]
pub struct Tail<'g> {
    pub subcurve: Subcurve<'g>,
    /// Edge index of the generating bridge.
    pub bridge: usize,
    /// Endpoint of the bridge inside the tail.
    pub inner: usize,
    /// Endpoint of the bridge in the complementary tail.
    pub outer: usize,
    pub size: TailSize,
}

impl<'g> Tail<'g> {
    fn new(host: &'g DualGraph, side: VertexSet, bridge: usize, inner: usize, outer: usize) -> Self {
        let subcurve = Subcurve::compute(host, side);
        let twice = 2 * subcurve.genus.expect("tails are connected");
        let size = match twice.cmp(&host.genus) {
            std::cmp::Ordering::Less => TailSize::Small,
            std::cmp::Ordering::Greater => TailSize::Large,
            std::cmp::Ordering::Equal => TailSize::Half,
        };
        Tail { subcurve, bridge, inner, outer, size }
    }

    pub fn vertices(&self) -> VertexSet {
        self.subcurve.vertices
    }

    pub fn genus(&self) -> i64 {
        self.subcurve.genus.expect("tails are connected")
    }

    pub fn host(&self) -> &'g DualGraph {
        self.subcurve.host
    }

    pub fn bridge_id(&self) -> &'g str {
        &self.subcurve.host.edges[self.bridge].id
    }

    /// A smooth point lies in the tail iff its component does; a node lies in
    /// it iff both branches do, or it is the generating node.
    pub fn contains(&self, point: &PointOnCurve) -> Result<bool> {
        let host = self.subcurve.host;
        Ok(match point {
            PointOnCurve::Smooth { component, .. } => {
                self.vertices().contains(host.vertex_index(component)?)
            }
            PointOnCurve::Node { edge } => {
                let e = host.edge_index(edge)?;
                let [a, b] = host.edges[e].ends;
                e == self.bridge || (self.vertices().contains(a) && self.vertices().contains(b))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum TailRelation {
    Equal,
    Cover,
    Q1SubQ2,
    Q2SubQ1,
    Disjoint,
}

/// Classifies two tails of the same curve: they are equal, cover the curve,
/// are nested, or are disjoint.
pub fn tail_pair_relation(q1: &Tail<'_>, q2: &Tail<'_>) -> Result<TailRelation> {
    if !std::ptr::eq(q1.host(), q2.host()) && q1.host() != q2.host() {
        return Err(Error::HostMismatch);
    }
    let (a, b) = (q1.vertices(), q2.vertices());
    let full = q1.host().all_vertices();
    // Complementary tails share their generating node, so they count as a
    // cover rather than as disjoint.
    Ok(if a == b {
        TailRelation::Equal
    } else if a.union(b) == full {
        TailRelation::Cover
    } else if a.is_subset(b) {
        TailRelation::Q1SubQ2
    } else if b.is_subset(a) {
        TailRelation::Q2SubQ1
    } else if a.intersection(b).is_empty() {
        TailRelation::Disjoint
    } else {
        return Err(Error::NoRelation);
    })
}

/// A point of the curve: a smooth point on a component, or a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum PointOnCurve {
    /// `label` tells apart distinct smooth points of one component.
    Smooth { component: String, label: String },
    Node { edge: String },
}

impl PointOnCurve {
    pub fn smooth(component: impl Into<String>, label: impl Into<String>) -> Self {
        PointOnCurve::Smooth { component: component.into(), label: label.into() }
    }

    pub fn node(edge: impl Into<String>) -> Self {
        PointOnCurve::Node { edge: edge.into() }
    }

    /// Checks the point against a host; smooth labels may not shadow node ids.
    pub fn validate(&self, host: &DualGraph) -> Result<()> {
        match self {
            PointOnCurve::Smooth { component, label } => {
                host.vertex_index(component)
                    .map_err(|_| Error::UnknownPoint(format!("no component `{component}`")))?;
                if host.edge_index(label).is_ok() {
                    return Err(Error::UnknownPoint(format!(
                        "smooth point label `{label}` collides with a node id"
                    )));
                }
            }
            PointOnCurve::Node { edge } => {
                host.edge_index(edge)
                    .map_err(|_| Error::UnknownPoint(format!("no node `{edge}`")))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PointOnCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOnCurve::Smooth { component, label } => write!(f, "{label}@{component}"),
            PointOnCurve::Node { edge } => write!(f, "node {edge}"),
        }
    }
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

    fn g3() -> DualGraph {
        DualGraph::new([("C1", 1), ("C2", 2)], [("r", "C1", "C2")]).unwrap()
    }

    fn chain(genera: [u32; 3]) -> DualGraph {
        DualGraph::new(
            [("A", genera[0]), ("B", genera[1]), ("C", genera[2])],
            [("ab", "A", "B"), ("bc", "B", "C")],
        )
        .unwrap()
    }

    fn star() -> DualGraph {
        DualGraph::new(
            [("L1", 1), ("L2", 1), ("L3", 1), ("O", 0)],
            [("r1", "O", "L1"), ("r2", "O", "L2"), ("r3", "O", "L3")],
        )
        .unwrap()
    }

    fn brute_bridges(g: &DualGraph) -> Vec<usize> {
        (0..g.edge_count())
            .filter(|&e| {
                !g.edge(e).is_loop()
                    && g.reachable_avoiding(0, &[e]) != g.all_vertices()
            })
            .collect()
    }

    #[test]
    fn arithmetic_genus_examples() {
        let g1 = DualGraph::new([("C1", 2)], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(g1.genus(), 2);
        assert_eq!(g2().genus(), 2);
        let g4 = DualGraph::new([("C1", 1), ("C2", 2)], [("e1", "C1", "C2"), ("e2", "C1", "C2")]).unwrap();
        assert_eq!(g4.genus(), 4);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(DualGraph::new([("A", 1), ("B", 1)], Vec::<(&str, &str, &str)>::new()).is_err());
        assert!(DualGraph::new([("A", 1), ("A", 1)], Vec::<(&str, &str, &str)>::new()).is_err());
        assert!(DualGraph::new([("A", 1)], [("e", "A", "Z")]).is_err());
        assert!(DualGraph::new([("A", 1)], [("e", "A", "A"), ("e", "A", "A")]).is_err());
        assert!(DualGraph::from_json("{\"vertices\":[").is_err());
    }

    #[test]
    fn stability_examples() {
        assert_eq!(g2().stability_class(), StabilityClass::Stable);
        let sub = g2().blow_up("e1").unwrap().graph;
        assert_eq!(sub.stability_class(), StabilityClass::QuasistableNotStable);
        let tail = DualGraph::new([("R", 0), ("C", 2)], [("e", "R", "C")]).unwrap();
        assert_eq!(tail.stability_class(), StabilityClass::NotSemistable);
        // two adjacent exceptional vertices
        let twice = sub.blow_up("e1.a").unwrap().graph;
        assert_eq!(twice.stability_class(), StabilityClass::SemistableNotStable);
    }

    #[test]
    fn subcurve_report_examples() {
        let g = g2();
        let z = g.subcurve_by_ids(&["C1"]).unwrap();
        assert_eq!((z.k(), z.w(), z.genus()), (3, 1, Some(0)));
        let all = g.subcurve(g.all_vertices()).unwrap();
        assert_eq!((all.k(), all.w()), (0, 2 * g.genus() - 2));
        let three = g3();
        let z = three.subcurve_by_ids(&["C1"]).unwrap();
        assert_eq!((z.k(), z.genus(), z.w()), (1, Some(1), 1));
        assert!(matches!(g.subcurve(VertexSet::EMPTY), Err(Error::EmptySet)));
        let path = chain([1, 1, 1]);
        let disconnected = path.subcurve_by_ids(&["A", "C"]).unwrap();
        assert!(!disconnected.is_connected());
        assert_eq!(disconnected.genus(), None);
    }

    #[test]
    fn connected_subcurve_enumeration() {
        let g1 = DualGraph::new([("C1", 2)], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(g1.connected_sets(false, 16).unwrap().len(), 1);
        assert!(g1.connected_sets(true, 16).unwrap().is_empty());
        assert_eq!(g2().connected_sets(false, 16).unwrap().len(), 3);
        assert_eq!(g2().connected_sets(true, 16).unwrap().len(), 2);
        let path = chain([1, 1, 1]);
        let all = path.connected_sets(false, 16).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(path.connected_sets(true, 16).unwrap().len(), 5);
        // lexicographic order of index tuples
        let tuples: Vec<Vec<usize>> = all.iter().map(|s| s.to_vec()).collect();
        assert_eq!(tuples, vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![1], vec![1, 2], vec![2]]);
        assert!(matches!(path.connected_sets(false, 2), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn bridge_examples() {
        assert!(g2().bridges().is_empty());
        assert_eq!(g3().bridges(), vec![0]);
        assert_eq!(chain([1, 1, 1]).bridges(), vec![0, 1]);
        let looped = DualGraph::new([("A", 0), ("B", 1)], [("l", "A", "A"), ("r", "A", "B")]).unwrap();
        assert_eq!(looped.bridges(), vec![looped.edge_index("r").unwrap()]);
        for g in [g2(), g3(), chain([0, 1, 2]), star(), looped] {
            assert_eq!(g.bridges(), brute_bridges(&g));
        }
    }

    #[test]
    fn tail_examples() {
        let g = g3();
        let tails = g.tails();
        assert_eq!(tails.len(), 2);
        assert_eq!(tails[0].ids(), vec!["C1"]);
        assert_eq!(tails[0].size, TailSize::Small);
        assert_eq!(tails[1].size, TailSize::Large);
        let two = g2();
        assert!(two.tails().is_empty());
        let halves = DualGraph::new([("A", 1), ("B", 1)], [("r", "A", "B")]).unwrap();
        assert_eq!(halves.genus(), 2);
        assert!(halves.tails().iter().all(|t| t.size == TailSize::Half));
        for t in &tails {
            assert_eq!(t.genus() + t.subcurve.complement().unwrap().genus().unwrap(), g.genus());
        }
    }

    #[test]
    fn small_tail_set_examples() {
        let three = g3();
        let q = three.small_tail_set().unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].ids(), vec!["C1"]);
        let two = g2();
        assert!(two.small_tail_set().unwrap().is_empty());
        let halves = DualGraph::new([("A", 1), ("B", 1)], [("r", "A", "B")]).unwrap();
        let q = halves.small_tail_set().unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].ids(), vec!["A"]);
        // two half nodes only occur on non-stable curves
        let bad = DualGraph::new(
            [("A", 1), ("E", 0), ("B", 1)],
            [("x", "A", "E"), ("y", "E", "B")],
        )
        .unwrap();
        assert!(matches!(bad.small_tail_set(), Err(Error::MultipleHalfNodes)));
    }

    impl Tail<'_> {
        fn ids(&self) -> Vec<String> {
            self.subcurve.ids()
        }
    }

    #[test]
    fn tail_relations() {
        let g = g3();
        let t = g.tails();
        assert_eq!(tail_pair_relation(&t[0], &t[1]).unwrap(), TailRelation::Cover);
        let c = chain([1, 1, 1]);
        let t = c.tails();
        let by = |ids: &[&str]| t.iter().find(|x| x.vertices() == c.set_from_ids(ids).unwrap()).unwrap();
        assert_eq!(tail_pair_relation(by(&["A"]), by(&["C"])).unwrap(), TailRelation::Disjoint);
        assert_eq!(tail_pair_relation(by(&["A"]), by(&["A", "B"])).unwrap(), TailRelation::Q1SubQ2);
        assert_eq!(tail_pair_relation(by(&["A", "B"]), by(&["A"])).unwrap(), TailRelation::Q2SubQ1);
        assert_eq!(tail_pair_relation(by(&["A"]), by(&["A"])).unwrap(), TailRelation::Equal);
        let other = chain([1, 1, 1]);
        let ot = other.tails();
        assert!(tail_pair_relation(&ot[0], &t[0]).is_ok());
        let g3 = g3();
        assert!(matches!(tail_pair_relation(&g3.tails()[0], &t[0]), Err(Error::HostMismatch)));
    }

    #[test]
    fn separating_lines_and_trees() {
        assert!(g2().separating_lines().is_empty());
        assert!(g3().separating_lines().is_empty());
        let s = star();
        assert_eq!(s.separating_lines(), vec![s.vertex_index("O").unwrap()]);
        assert_eq!(s.separating_trees_of_lines(), vec![s.set_from_ids(&["O"]).unwrap()]);
        let pair = DualGraph::new(
            [("P", 0), ("R", 0), ("H", 2)],
            [("pr", "P", "R"), ("ph", "P", "H"), ("rh", "R", "H")],
        )
        .unwrap();
        // the cycle P-R-H means none of these edges is a bridge
        assert!(pair.separating_trees_of_lines().is_empty());
        let tree = DualGraph::new(
            [("P", 0), ("R", 0), ("H1", 1), ("H2", 1), ("H3", 1), ("H4", 1)],
            [("pr", "P", "R"), ("p1", "P", "H1"), ("p2", "P", "H2"), ("r3", "R", "H3"), ("r4", "R", "H4")],
        )
        .unwrap();
        let trees = tree.separating_trees_of_lines();
        assert_eq!(trees, vec![tree.set_from_ids(&["P", "R"]).unwrap()]);
        for sub in tree.connected_sets(false, 16).unwrap() {
            if sub.is_subset(trees[0]) {
                assert!(tree.is_separating_tree(sub));
            }
        }
        assert!(g2().separating_trees_of_lines().is_empty());
    }

    #[test]
    fn blow_up_examples() {
        let b = g2().blow_up("e1").unwrap();
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count(), b.graph.genus()), (3, 4, 2));
        assert_eq!(b.exceptional, "E_e1");
        assert!(b.graph.is_exceptional(b.graph.vertex_index("E_e1").unwrap()));
        let looped = DualGraph::new([("C", 1)], [("l", "C", "C")]).unwrap();
        assert_eq!(looped.genus(), 2);
        let b = looped.blow_up("l").unwrap().graph;
        assert_eq!((b.vertex_count(), b.edge_count(), b.genus()), (2, 2, 2));
        assert_eq!(b.loop_count(0), 0);
        let b = g3().blow_up("r").unwrap().graph;
        assert_eq!(b.bridges().len(), 2);
        assert_eq!(b.stability_class(), StabilityClass::QuasistableNotStable);
        assert!(matches!(g3().blow_up("zz"), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn contraction_inverts_blow_up() {
        let g = g2();
        let b = g.blow_up("e2").unwrap();
        let e = b.graph.vertex_index(&b.exceptional).unwrap();
        let back = b.graph.contract_exceptional(e).unwrap();
        assert!(back.same_structure(&g));
        assert!(b.graph.contract_exceptional(0).is_err());
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let text = r#"{"vertices":[{"id":"C2","genus":0},{"id":"C1","genus":0}],
            "edges":[{"id":"e3","ends":["C2","C1"]},{"id":"e1","ends":["C1","C2"]},{"id":"e2","ends":["C1","C2"]}]}"#;
        let g = DualGraph::from_json(text).unwrap();
        let once = g.to_json();
        assert_eq!(DualGraph::from_json(&once).unwrap().to_json(), once);
        assert_eq!(g, g2());
    }

    #[test]
    fn point_validation() {
        let g = g3();
        assert!(PointOnCurve::smooth("C1", "p").validate(&g).is_ok());
        assert!(PointOnCurve::smooth("C9", "p").validate(&g).is_err());
        assert!(PointOnCurve::smooth("C1", "r").validate(&g).is_err());
        assert!(PointOnCurve::node("r").validate(&g).is_ok());
        assert!(PointOnCurve::node("x").validate(&g).is_err());
    }
}
