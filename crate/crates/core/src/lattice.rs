//! Twisters, the multidegree lattice and the degree class group.
//!
//! Twister multidegrees are the image of the (negated) graph Laplacian `M`,
//! where `M[v][w]` counts the edges between distinct components and the
//! diagonal makes every row sum to zero. Multidegrees of total degree `d` modulo
//! this lattice form the degree class group; its order equals the number of
//! spanning trees.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DualGraph, Tail};

/// Integer vector indexed by the vertices of a host graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(values: Vec<i64>) -> Self {
        Multidegree(values)
    }

    pub fn zeros(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// Multidegree of a smooth point on component `v`.
    pub fn indicator(n: usize, v: usize) -> Self {
        let mut m = Multidegree::zeros(n);
        m.0[v] = 1;
        m
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn set(&mut self, v: usize, value: i64) {
        self.0[v] = value;
    }

    pub fn add_at(&mut self, v: usize, delta: i64) {
        self.0[v] += delta;
    }

    /// Degree on a set of vertices.
    pub fn degree_on(&self, set: crate::graph::VertexSet) -> i64 {
        set.iter().map(|v| self.0[v]).sum()
    }

    pub fn check_host(&self, host: &DualGraph) -> Result<()> {
        if self.0.len() != host.vertex_count() {
            return Err(Error::IndexMismatch { expected: host.vertex_count(), got: self.0.len() });
        }
        Ok(())
    }

    pub fn to_map(&self, host: &DualGraph) -> BTreeMap<String, i64> {
        host.vertices().iter().map(|v| v.id.clone()).zip(self.0.iter().copied()).collect()
    }

    /// Builds a multidegree from an id-keyed map; missing vertices get 0.
    pub fn from_map(host: &DualGraph, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut m = Multidegree::zeros(host.vertex_count());
        for (id, &value) in map {
            m.0[host.vertex_index(id)?] = value;
        }
        Ok(m)
    }

    pub fn to_file(&self, host: &DualGraph) -> MultidegreeFile {
        MultidegreeFile { values: self.to_map(host) }
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Index<usize> for Multidegree {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

/// `{"values":{"C1":1,"C2":0}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultidegreeFile {
    pub values: BTreeMap<String, i64>,
}

/// The intersection matrix of components; its column span is the lattice of
/// twister multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwisterLattice {
    matrix: Vec<Vec<i64>>,
}

impl TwisterLattice {
    pub fn new(host: &DualGraph) -> Self {
        let n = host.vertex_count();
        let mut matrix = vec![vec![0i64; n]; n];
        for e in host.edges() {
            let [a, b] = e.ends;
            if a != b {
                matrix[a][b] += 1;
                matrix[b][a] += 1;
                matrix[a][a] -= 1;
                matrix[b][b] -= 1;
            }
        }
        TwisterLattice { matrix }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, coefficients: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(coefficients).map(|(m, c)| m * c).sum())
            .collect()
    }

    /// `−M` with the row and column of `base` deleted.
    fn reduced_laplacian(&self, base: usize) -> Vec<Vec<BigInt>> {
        let n = self.matrix.len();
        (0..n)
            .filter(|&i| i != base)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != base)
                    .map(|j| BigInt::from(-self.matrix[i][j]))
                    .collect()
            })
            .collect()
    }
}

/// Multidegree of the twister `O_X(Σ D_v C_v)`.
pub fn twister_multidegree(host: &DualGraph, coefficients: &[i64]) -> Result<Multidegree> {
    if coefficients.len() != host.vertex_count() {
        return Err(Error::IndexMismatch { expected: host.vertex_count(), got: coefficients.len() });
    }
    Ok(Multidegree(TwisterLattice::new(host).apply(coefficients)))
}

/// Multidegree of `O_X(Σ a_Q Q)`: each tail contributes −1 on its side of the
/// generating node and +1 on the other side.
pub fn tail_twister_multidegree(host: &DualGraph, terms: &[(&Tail<'_>, i64)]) -> Result<Multidegree> {
    let mut m = Multidegree::zeros(host.vertex_count());
    for (tail, a) in terms {
        if !std::ptr::eq(tail.host(), host) && tail.host() != host {
            return Err(Error::HostMismatch);
        }
        m.0[tail.inner] -= a;
        m.0[tail.outer] += a;
    }
    Ok(m)
}

/// The degree class group as a list of invariant factors `n_1 | n_2 | …`,
/// each greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClassGroup {
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

pub fn class_group(host: &DualGraph) -> DegreeClassGroup {
    let reduced = TwisterLattice::new(host).reduced_laplacian(0);
    let diagonal = smith_diagonal(reduced);
    let order = diagonal.iter().fold(BigInt::one(), |acc, d| acc * d);
    let invariant_factors = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    DegreeClassGroup { invariant_factors, order }
}

/// Diagonal of the Smith normal form, in divisibility order, absolute values.
fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                return diagonal;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let delta = &q * &a[i][t];
                        a[i][j] -= delta;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole remaining block.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    diagonal
}

/// Number of spanning trees of the loopless multigraph (matrix-tree theorem).
pub fn spanning_tree_count(host: &DualGraph) -> BigInt {
    bareiss_determinant(TwisterLattice::new(host).reduced_laplacian(0))
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
                m[i][j] = value;
            }
        }
        previous = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// The unique representative of `d + Λ_X` that is nonnegative away from
/// `base` and from which no nonempty set avoiding `base` can fire (a
/// base-reduced divisor).
pub fn canonical_representative(host: &DualGraph, d: &Multidegree, base: usize) -> Result<Multidegree> {
    d.check_host(host)?;
    if base >= host.vertex_count() {
        return Err(Error::InvalidArgument(format!("base index {base} out of range")));
    }
    let mut values = d.0.clone();
    make_effective_off_base(host, &mut values, base);
    reduce_by_burning(host, &mut values, base);
    Ok(Multidegree(values))
}

/// Fires the balls around `base` outward-in so that every other vertex ends
/// up with a nonnegative value. Only `base` can go negative.
fn make_effective_off_base(host: &DualGraph, values: &mut [i64], base: usize) {
    let n = host.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for u in host.neighbors(v).iter() {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let radius = dist.iter().copied().max().unwrap_or(0);
    for layer in (1..=radius).rev() {
        // Firing the ball of radius `layer − 1` sends one chip along each edge
        // into the layer; every layer vertex has at least one such edge.
        let inflow = |v: usize| {
            host.incident_edges(v)
                .iter()
                .filter(|&&e| {
                    let u = host.edge(e).other(v);
                    u != v && dist[u] + 1 == layer
                })
                .count() as i64
        };
        let firings = (0..n)
            .filter(|&v| dist[v] == layer && values[v] < 0)
            .map(|v| Integer::div_ceil(&(-values[v]), &inflow(v)))
            .max()
            .unwrap_or(0);
        if firings == 0 {
            continue;
        }
        for e in host.edges() {
            let [a, b] = e.ends;
            let (inside, outside) = match (dist[a] < layer, dist[b] < layer) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            values[inside] -= firings;
            values[outside] += firings;
        }
    }
}

/// Dhar's burning algorithm: burn from `base`; whatever survives can fire
/// legally, so fire it and repeat until everything burns.
fn reduce_by_burning(host: &DualGraph, values: &mut [i64], base: usize) {
    let n = host.vertex_count();
    loop {
        let mut burnt = vec![false; n];
        burnt[base] = true;
        let mut burning = vec![base];
        let mut heat = vec![0i64; n];
        while let Some(v) = burning.pop() {
            for &e in host.incident_edges(v) {
                let u = host.edge(e).other(v);
                if u == v || burnt[u] {
                    continue;
                }
                heat[u] += 1;
                if values[u] < heat[u] {
                    burnt[u] = true;
                    burning.push(u);
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return;
        }
        for e in host.edges() {
            let [a, b] = e.ends;
            match (burnt[a], burnt[b]) {
                (false, true) => {
                    values[a] -= 1;
                    values[b] += 1;
                }
                (true, false) => {
                    values[b] -= 1;
                    values[a] += 1;
                }
                _ => {}
            }
        }
    }
}

/// `d1 ≡ d2` iff `d1 − d2` is a twister multidegree.
pub fn classes_equal(host: &DualGraph, d1: &Multidegree, d2: &Multidegree) -> Result<bool> {
    d1.check_host(host)?;
    d2.check_host(host)?;
    if d1.total() != d2.total() {
        return Err(Error::TotalDegreeMismatch(d1.total(), d2.total()));
    }
    Ok(canonical_representative(host, d1, 0)? == canonical_representative(host, d2, 0)?)
}
