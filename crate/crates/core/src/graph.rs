//! Graph substrate: vertex sets, bipartite graphs, contraction multigraphs,
//! shores, cuts and degree profiles.
//!
//! Vertices are dense indices `0..n`. In a [`BipartiteGraph`] the first `a`
//! indices are the A part and the next `b` the B part, so a vertex set over
//! the whole graph fits in a single `u64` word.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported graph order.
pub const MAX_VERTICES: usize = 64;

/// A subset of vertex indices, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Read-only view shared by bipartite graphs and contraction multigraphs.
///
/// `edge_list` returns every edge as a pair of vertex indices with the smaller
/// index first; parallel edges appear once per copy.
pub trait Graph {
    fn order(&self) -> usize;
    fn edge_list(&self) -> &[(usize, usize)];
    /// Neighbours of `v`, ignoring multiplicity.
    fn adjacency(&self, v: usize) -> VertexSet;
    fn vertex_id(&self, v: usize) -> &str;

    fn size(&self) -> usize {
        self.edge_list().len()
    }

    fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    fn degree(&self, v: usize) -> usize {
        self.edge_list()
            .iter()
            .filter(|&&(x, y)| x == v || y == v)
            .count()
    }

    fn vertex_index(&self, id: &str) -> Result<usize> {
        (0..self.order())
            .find(|&v| self.vertex_id(v) == id)
            .ok_or_else(|| Error::input(format!("unknown vertex id `{id}`")))
    }

    fn vertex_ids(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertex_id(v).to_owned()).collect()
    }

    /// Connectivity of the subgraph induced by `active`. The empty set counts as connected.
    fn is_connected_within(&self, active: VertexSet) -> bool {
        let Some(start) = active.first() else {
            return true;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | (self.adjacency(v) & active);
            }
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen == active
    }

    fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }
}

fn default_ids(prefix: char, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i}")).collect()
}

/// A simple bipartite graph with an explicit two-part labelling.
///
/// Edges are stored as `(a_index, b_index)` pairs in lexicographic order, which
/// fixes the edge numbering used everywhere else.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    name: Option<String>,
    ids: Vec<String>,
    part_a: usize,
    part_b: usize,
    edges: Vec<(usize, usize)>,
    endpoints: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("name", &self.name)
            .field("part_a", &self.part_a)
            .field("part_b", &self.part_b)
            .field("edges", &self.edges)
            .finish()
    }
}

impl BipartiteGraph {
    /// Builds a graph from explicit vertex ids and `(a_index, b_index)` edges.
    pub fn new(part_a: Vec<String>, part_b: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let (a, b) = (part_a.len(), part_b.len());
        if a + b > MAX_VERTICES {
            return Err(Error::Resource {
                what: "graph order",
                actual: a + b,
                cap: MAX_VERTICES,
            });
        }
        let ids: Vec<String> = part_a.into_iter().chain(part_b).collect();
        for (i, id) in ids.iter().enumerate() {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(Error::input(format!("vertex id {id:?} must be non-empty without whitespace")));
            }
            if ids[..i].contains(id) {
                return Err(Error::input(format!("duplicate vertex id `{id}`")));
            }
        }
        let mut sorted = edges;
        for &(i, j) in &sorted {
            if i >= a || j >= b {
                return Err(Error::input(format!("edge ({i}, {j}) out of range for parts {a}x{b}")));
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("parallel edge ({}, {})", w[0].0, w[0].1)));
        }
        let mut adj = vec![VertexSet::EMPTY; a + b];
        let endpoints = sorted
            .iter()
            .map(|&(i, j)| {
                adj[i].insert(a + j);
                adj[a + j].insert(i);
                (i, a + j)
            })
            .collect();
        Ok(BipartiteGraph {
            name: None,
            ids,
            part_a: a,
            part_b: b,
            edges: sorted,
            endpoints,
            adj,
        })
    }

    /// Builds a graph with default ids `a0.. / b0..`.
    pub fn from_edges(a: usize, b: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(default_ids('a', a), default_ids('b', b), edges)
    }

    /// Builds a graph from biadjacency rows: bit `j` of `rows[i]` is the edge `(i, j)`.
    pub fn from_biadjacency(a: usize, b: usize, rows: &[u64]) -> Result<Self> {
        if rows.len() != a {
            return Err(Error::input(format!("expected {a} rows, got {}", rows.len())));
        }
        let mut edges = Vec::new();
        for (i, &row) in rows.iter().enumerate() {
            if b < 64 && row >> b != 0 {
                return Err(Error::input(format!("row {i} has bits beyond part size {b}")));
            }
            edges.extend(VertexSet::from_bits(row).iter().map(|j| (i, j)));
        }
        Self::from_edges(a, b, edges)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        (self.part_a, self.part_b)
    }

    pub fn part_a(&self) -> VertexSet {
        VertexSet::full(self.part_a)
    }

    pub fn part_b(&self) -> VertexSet {
        VertexSet::full(self.part_a + self.part_b) - VertexSet::full(self.part_a)
    }

    pub fn in_part_a(&self, v: usize) -> bool {
        v < self.part_a
    }

    pub fn part_a_ids(&self) -> &[String] {
        &self.ids[..self.part_a]
    }

    pub fn part_b_ids(&self) -> &[String] {
        &self.ids[self.part_a..]
    }

    /// Edges as `(a_index, b_index)` pairs, in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Global vertex index of B-vertex `j`.
    pub fn b_vertex(&self, j: usize) -> usize {
        self.part_a + j
    }

    pub fn edge_index(&self, a_index: usize, b_index: usize) -> Option<usize> {
        self.edges.binary_search(&(a_index, b_index)).ok()
    }

    /// Index of the edge joining two global vertices, in either order.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let (x, y) = if u < v { (u, v) } else { (v, u) };
        if x >= self.part_a || y < self.part_a || y >= self.order() {
            return None;
        }
        self.edge_index(x, y - self.part_a)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Rows of the biadjacency matrix, bit `j` of row `i` set iff `(i, j)` is an edge.
    pub fn biadjacency(&self) -> Vec<u64> {
        let mut rows = vec![0u64; self.part_a];
        for &(i, j) in &self.edges {
            rows[i] |= 1u64 << j;
        }
        rows
    }

    /// The same graph with the roles of the two parts exchanged.
    pub fn swap_parts(&self) -> BipartiteGraph {
        let edges = self.edges.iter().map(|&(i, j)| (j, i)).collect();
        let mut g = BipartiteGraph::new(self.part_b_ids().to_vec(), self.part_a_ids().to_vec(), edges)
            .expect("swapping parts preserves validity");
        g.name = self.name.clone();
        g
    }

    /// Renames A-vertex `i` to position `perm_a[i]` and B-vertex `j` to `perm_b[j]`.
    pub fn relabel(&self, perm_a: &[usize], perm_b: &[usize]) -> Result<BipartiteGraph> {
        let is_perm = |p: &[usize], n: usize| {
            p.len() == n && p.iter().copied().collect::<VertexSet>() == VertexSet::full(n)
        };
        if !is_perm(perm_a, self.part_a) || !is_perm(perm_b, self.part_b) {
            return Err(Error::input("relabelling must be a pair of permutations"));
        }
        let edges = self.edges.iter().map(|&(i, j)| (perm_a[i], perm_b[j])).collect();
        BipartiteGraph::from_edges(self.part_a, self.part_b, edges)
    }

    /// The graph with edge `e` deleted; vertex set and ids unchanged.
    pub fn without_edge(&self, e: usize) -> BipartiteGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != e)
            .map(|(_, &pair)| pair)
            .collect();
        let mut g = BipartiteGraph::new(self.part_a_ids().to_vec(), self.part_b_ids().to_vec(), edges)
            .expect("deleting an edge preserves validity");
        g.name = self.name.clone();
        g
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph::new(self.ids.clone(), self.endpoints.clone()).expect("bipartite graphs have no loops")
    }

    /// Human-readable edge label `a0-b3`.
    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.endpoints[e];
        format!("{}-{}", self.ids[u], self.ids[v])
    }
}

impl Graph for BipartiteGraph {
    fn order(&self) -> usize {
        self.part_a + self.part_b
    }

    fn edge_list(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    fn adjacency(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

/// A loopless multigraph. Produced by shore contraction, where parallel edges
/// are kept and may form odd cycles through the contraction vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
}

impl MultiGraph {
    pub fn new(ids: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = ids.len();
        Error::check_cap("graph order", n, MAX_VERTICES)?;
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        Ok(MultiGraph {
            ids,
            edges: normalized,
            adj,
        })
    }

    /// Builds from a plain edge list with ids `v0..`.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(default_ids('v', n), edges)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Proper 2-colouring test.
    pub fn is_bipartite(&self) -> bool {
        let n = self.ids.len();
        let mut colour = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for w in self.adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(d) if d == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

impl Graph for MultiGraph {
    fn order(&self) -> usize {
        self.ids.len()
    }

    fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }
}

/// One side `X` of a cut `∂(X)` in a host graph of order `order`.
///
/// Always a proper, non-empty subset, so the complement is a valid shore too.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Shore {
    members: VertexSet,
    order: usize,
}

impl Shore {
    pub fn new(members: VertexSet, order: usize) -> Result<Self> {
        if order > MAX_VERTICES || !members.is_subset(VertexSet::full(order)) {
            return Err(Error::input(format!("shore {members:?} is not a subset of a graph of order {order}")));
        }
        if members.is_empty() || members.len() == order {
            return Err(Error::input("a shore must be a non-empty proper vertex subset"));
        }
        Ok(Shore { members, order })
    }

    pub fn from_vertices(vertices: impl IntoIterator<Item = usize>, order: usize) -> Result<Self> {
        Self::new(vertices.into_iter().collect(), order)
    }

    /// Parses a list of vertex ids against `g`.
    pub fn from_ids<G: Graph + ?Sized>(g: &G, ids: &[&str]) -> Result<Self> {
        let members = ids.iter().map(|id| g.vertex_index(id)).collect::<Result<VertexSet>>()?;
        Self::new(members, g.order())
    }

    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn complement(&self) -> Shore {
        Shore {
            members: self.members.complement(self.order),
            order: self.order,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1 || self.len() + 1 == self.order
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    /// Size of the smaller side.
    pub fn min_side(&self) -> usize {
        self.len().min(self.order - self.len())
    }

    /// The representative of `{X, X̄}` that contains vertex 0.
    pub fn canonical(&self) -> Shore {
        if self.members.contains(0) {
            *self
        } else {
            self.complement()
        }
    }

    /// The side of the cut that contains `v`.
    pub fn oriented_to(&self, v: usize) -> Shore {
        if self.members.contains(v) {
            *self
        } else {
            self.complement()
        }
    }
}

fn check_host<G: Graph + ?Sized>(g: &G, x: &Shore) -> Result<()> {
    if x.order() != g.order() {
        return Err(Error::input(format!(
            "shore belongs to a graph of order {}, not {}",
            x.order(),
            g.order()
        )));
    }
    Ok(())
}

/// `N(X)`: vertices outside `xs` with a neighbour in `xs`.
pub fn neighborhood<G: Graph + ?Sized>(g: &G, xs: VertexSet) -> Result<VertexSet> {
    if !xs.is_subset(g.vertices()) {
        return Err(Error::input(format!("{xs:?} is not a vertex subset of a graph of order {}", g.order())));
    }
    let mut out = VertexSet::EMPTY;
    for v in xs {
        out = out | g.adjacency(v);
    }
    Ok(out - xs)
}

/// Indices of the edges of `∂(X)`, in edge order.
pub fn edge_cut<G: Graph + ?Sized>(g: &G, x: &Shore) -> Result<Vec<usize>> {
    check_host(g, x)?;
    let members = x.members();
    Ok(g.edge_list()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| members.contains(u) != members.contains(v))
        .map(|(e, _)| e)
        .collect())
}

/// Edges with one end in `xs` and the other in `ys`.
pub fn edges_between<G: Graph + ?Sized>(g: &G, xs: VertexSet, ys: VertexSet) -> Vec<usize> {
    g.edge_list()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| (xs.contains(u) && ys.contains(v)) || (xs.contains(v) && ys.contains(u)))
        .map(|(e, _)| e)
        .collect()
}

/// `G/(X → x)`: shrinks `X` to a single contraction vertex and deletes loops.
///
/// The result lists the vertices of `X̄` in their original order followed by the
/// contraction vertex, whose id is the member ids of `X` joined by `+` in brackets.
pub fn contract_shore<G: Graph + ?Sized>(g: &G, x: &Shore) -> Result<MultiGraph> {
    check_host(g, x)?;
    let members = x.members();
    let rest = members.complement(g.order());
    let mut new_index = vec![usize::MAX; g.order()];
    let mut ids = Vec::with_capacity(rest.len() + 1);
    for v in rest {
        new_index[v] = ids.len();
        ids.push(g.vertex_id(v).to_owned());
    }
    let contracted = ids.len();
    for v in members {
        new_index[v] = contracted;
    }
    let label: Vec<&str> = members.iter().map(|v| g.vertex_id(v)).collect();
    ids.push(format!("[{}]", label.join("+")));
    let edges = g
        .edge_list()
        .iter()
        .map(|&(u, v)| (new_index[u], new_index[v]))
        .filter(|(u, v)| u != v)
        .collect();
    MultiGraph::new(ids, edges)
}

/// Vertex degrees and cubic-vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// Degree of each vertex, by vertex index.
    pub degrees: Vec<usize>,
    /// Number of vertices of degree exactly 3.
    pub n3: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl DegreeProfile {
    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Vertices of degree at least 4.
    pub fn high_degree_vertices(&self) -> VertexSet {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >= 4)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn degree_profile<G: Graph + ?Sized>(g: &G) -> DegreeProfile {
    let mut degrees = vec![0; g.order()];
    for &(u, v) in g.edge_list() {
        degrees[u] += 1;
        degrees[v] += 1;
    }
    DegreeProfile {
        n3: degrees.iter().filter(|&&d| d == 3).count(),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        degrees,
    }
}
