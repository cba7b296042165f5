//! Perfect matchings: existence, enumeration and the matching-covered test.
//!
//! Two engines back the existence question. Bipartite graphs use
//! Hopcroft–Karp; contraction multigraphs, which may contain odd cycles, use
//! an exact memoised backtracking search. Both are exposed so they can be
//! checked against each other.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, MultiGraph, VertexSet};

/// Default vertex cap for perfect-matching enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// A graph that can answer perfect-matching existence on induced subgraphs.
pub trait MatchingHost: Graph {
    /// Whether the subgraph induced by `active` has a perfect matching.
    fn has_perfect_matching_within(&self, active: VertexSet) -> bool;

    /// The bipartite view, when the host is a [`BipartiteGraph`].
    fn as_bipartite(&self) -> Option<&BipartiteGraph> {
        None
    }
}

impl MatchingHost for BipartiteGraph {
    fn has_perfect_matching_within(&self, active: VertexSet) -> bool {
        let left = active & self.part_a();
        let right = active & self.part_b();
        left.len() == right.len() && hopcroft_karp(self, active) == left.len()
    }

    fn as_bipartite(&self) -> Option<&BipartiteGraph> {
        Some(self)
    }
}

impl MatchingHost for MultiGraph {
    fn has_perfect_matching_within(&self, active: VertexSet) -> bool {
        has_perfect_matching_backtracking(self, active)
    }
}

pub fn has_perfect_matching<G: MatchingHost + ?Sized>(g: &G) -> bool {
    g.has_perfect_matching_within(g.vertices())
}

/// Maximum matching size of the bipartite subgraph induced by `active`.
pub fn hopcroft_karp(g: &BipartiteGraph, active: VertexSet) -> usize {
    const FREE: usize = usize::MAX;
    let n = g.order();
    let left: Vec<usize> = (active & g.part_a()).iter().collect();
    let right = active & g.part_b();
    let mut mate = vec![FREE; n];
    let mut dist = vec![usize::MAX; n];
    let mut size = 0;

    loop {
        // Layer the free left vertices by BFS over alternating paths.
        let mut queue = VecDeque::new();
        for &u in &left {
            if mate[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for v in g.adjacency(u) & right {
                match mate[v] {
                    FREE => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return size;
        }
        for &u in &left {
            if mate[u] == FREE && augment(g, u, right, &mut mate, &mut dist) {
                size += 1;
            }
        }
    }

    fn augment(g: &BipartiteGraph, u: usize, right: VertexSet, mate: &mut [usize], dist: &mut [usize]) -> bool {
        for v in g.adjacency(u) & right {
            let w = mate[v];
            if w == FREE || (dist[w] == dist[u] + 1 && augment(g, w, right, mate, dist)) {
                mate[u] = v;
                mate[v] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }
}

/// Exact existence test for any graph: match the lowest uncovered vertex in
/// every possible way, remembering vertex sets already shown to be unmatchable.
pub fn has_perfect_matching_backtracking<G: Graph + ?Sized>(g: &G, active: VertexSet) -> bool {
    fn search<G: Graph + ?Sized>(g: &G, remaining: VertexSet, dead: &mut HashSet<VertexSet>) -> bool {
        let Some(v) = remaining.first() else {
            return true;
        };
        if dead.contains(&remaining) {
            return false;
        }
        let rest = remaining.without(v);
        for w in g.adjacency(v) & rest {
            if search(g, rest.without(w), dead) {
                return true;
            }
        }
        dead.insert(remaining);
        false
    }
    if active.len() % 2 == 1 {
        return false;
    }
    search(g, active, &mut HashSet::new())
}

/// A perfect matching, as sorted indices into the host's edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PerfectMatching {
    edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// `mates[v]` is the vertex matched to `v`.
    pub fn mates<G: Graph + ?Sized>(&self, g: &G) -> Vec<usize> {
        let mut mates = vec![usize::MAX; g.order()];
        for &e in &self.edges {
            let (u, v) = g.edge_list()[e];
            mates[u] = v;
            mates[v] = u;
        }
        mates
    }

    /// `|M ∩ ∂(X)|`.
    pub fn crossing<G: Graph + ?Sized>(&self, g: &G, members: VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|&&e| {
                let (u, v) = g.edge_list()[e];
                members.contains(u) != members.contains(v)
            })
            .count()
    }
}

/// All perfect matchings, parallel edges counted as distinct choices, with the
/// default vertex cap.
pub fn enumerate_perfect_matchings<G: Graph + ?Sized>(g: &G) -> Result<Vec<PerfectMatching>> {
    enumerate_perfect_matchings_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

/// All perfect matchings in lexicographic order of their sorted edge indices.
pub fn enumerate_perfect_matchings_with_cap<G: Graph + ?Sized>(g: &G, cap: usize) -> Result<Vec<PerfectMatching>> {
    Error::check_cap("perfect-matching enumeration order", g.order(), cap)?;
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.order()];
    for (e, &(u, v)) in g.edge_list().iter().enumerate() {
        incident[u].push((e, v));
        incident[v].push((e, u));
    }
    let mut out = Vec::new();
    if g.order().is_multiple_of(2) {
        let mut chosen = Vec::with_capacity(g.order() / 2);
        collect(&incident, g.vertices(), &mut chosen, &mut out, &mut HashSet::new());
    }
    return Ok(out);

    fn collect(
        incident: &[Vec<(usize, usize)>],
        remaining: VertexSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<PerfectMatching>,
        dead: &mut HashSet<VertexSet>,
    ) -> bool {
        let Some(v) = remaining.first() else {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(PerfectMatching { edges });
            return true;
        };
        if dead.contains(&remaining) {
            return false;
        }
        let mut any = false;
        for &(e, w) in &incident[v] {
            if w != v && remaining.contains(w) {
                chosen.push(e);
                any |= collect(incident, remaining.without(v).without(w), chosen, out, dead);
                chosen.pop();
            }
        }
        if !any {
            dead.insert(remaining);
        }
        any
    }
}

/// Perfect matchings of the simple graph underlying `g`, one per set of matched
/// vertex pairs, each given as its mate array.
///
/// Cut questions (tightness, separation) only depend on which pairs are matched,
/// so parallel copies of an edge are not told apart here.
pub fn matched_pairings<G: Graph + ?Sized>(g: &G, cap: usize) -> Result<Vec<Vec<usize>>> {
    Error::check_cap("perfect-matching enumeration order", g.order(), cap)?;
    let n = g.order();
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        let mut mates = vec![usize::MAX; n];
        walk(g, g.vertices(), &mut mates, &mut out, &mut HashSet::new());
    }
    return Ok(out);

    fn walk<G: Graph + ?Sized>(
        g: &G,
        remaining: VertexSet,
        mates: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        dead: &mut HashSet<VertexSet>,
    ) -> bool {
        let Some(v) = remaining.first() else {
            out.push(mates.clone());
            return true;
        };
        if dead.contains(&remaining) {
            return false;
        }
        let rest = remaining.without(v);
        let mut any = false;
        for w in g.adjacency(v) & rest {
            mates[v] = w;
            mates[w] = v;
            any |= walk(g, rest.without(w), mates, out, dead);
        }
        mates[v] = usize::MAX;
        if !any {
            dead.insert(remaining);
        }
        any
    }
}

/// Outcome of the matching-covered test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// Connected, has a perfect matching, and every edge lies in one.
    pub covered: bool,
    pub connected: bool,
    pub has_perfect_matching: bool,
    /// Edge indices lying in no perfect matching (all edges when none exists).
    pub uncovered_edges: Vec<usize>,
}

/// Edge `uv` is covered iff `G - {u, v}` has a perfect matching.
pub fn is_matching_covered<G: MatchingHost + ?Sized>(g: &G) -> CoverageReport {
    let all = g.vertices();
    let connected = g.is_connected();
    let has_pm = g.order() >= 2 && g.has_perfect_matching_within(all);
    let uncovered_edges: Vec<usize> = if has_pm {
        let mut verdict: Vec<((usize, usize), bool)> = Vec::new();
        g.edge_list()
            .iter()
            .enumerate()
            .filter(|&(_, &pair)| {
                // Parallel copies share a verdict.
                let ok = match verdict.iter().find(|(p, _)| *p == pair) {
                    Some(&(_, ok)) => ok,
                    None => {
                        let ok = g.has_perfect_matching_within(all.without(pair.0).without(pair.1));
                        verdict.push((pair, ok));
                        ok
                    }
                };
                !ok
            })
            .map(|(e, _)| e)
            .collect()
    } else {
        (0..g.size()).collect()
    };
    CoverageReport {
        covered: connected && has_pm && uncovered_edges.is_empty(),
        connected,
        has_perfect_matching: has_pm,
        uncovered_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named_graph;

    fn path4() -> BipartiteGraph {
        named_graph("path4").unwrap()
    }

    #[test]
    fn existence_examples() {
        assert!(has_perfect_matching(&named_graph("c4").unwrap()));
        assert!(has_perfect_matching(&path4()));
        let k33_minus_vertex = BipartiteGraph::from_edges(3, 2, (0..3).flat_map(|i| (0..2).map(move |j| (i, j))).collect()).unwrap();
        assert!(!has_perfect_matching(&k33_minus_vertex));
        assert!(!has_perfect_matching(&k33_minus_vertex.to_multigraph()));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_perfect_matchings(&named_graph("c4").unwrap()).unwrap().len(), 2);
        assert_eq!(enumerate_perfect_matchings(&named_graph("k3,3").unwrap()).unwrap().len(), 6);
        assert_eq!(enumerate_perfect_matchings(&named_graph("q3").unwrap()).unwrap().len(), 9);
    }

    #[test]
    fn enumeration_is_lexicographic_and_perfect() {
        let g = named_graph("q3").unwrap();
        let pms = enumerate_perfect_matchings(&g).unwrap();
        assert!(pms.windows(2).all(|w| w[0] < w[1]));
        for pm in &pms {
            assert_eq!(pm.edges().len(), 4);
            assert!(pm.mates(&g).iter().all(|&m| m != usize::MAX));
        }
    }

    #[test]
    fn enumeration_cap() {
        let g = named_graph("k13,13").unwrap();
        let err = enumerate_perfect_matchings(&g).unwrap_err();
        assert_eq!(
            err,
            Error::Resource {
                what: "perfect-matching enumeration order",
                actual: 26,
                cap: DEFAULT_ENUMERATION_CAP
            }
        );
    }

    #[test]
    fn parallel_edges_count_separately() {
        // Double edge 0-1 plus double edge 2-3: four distinct matchings, one pairing.
        let h = MultiGraph::from_edges(4, vec![(0, 1), (0, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(enumerate_perfect_matchings(&h).unwrap().len(), 4);
        assert_eq!(matched_pairings(&h, 24).unwrap().len(), 1);
    }

    #[test]
    fn coverage_examples() {
        let p = path4();
        let report = is_matching_covered(&p);
        assert!(!report.covered);
        // the middle edge a1-b0 of a0-b0-a1-b1
        assert_eq!(report.uncovered_edges, vec![p.edge_index(1, 0).unwrap()]);
        assert!(is_matching_covered(&named_graph("k3,3").unwrap()).covered);
        assert!(is_matching_covered(&named_graph("q3").unwrap()).covered);
    }

    #[test]
    fn coverage_without_perfect_matching_lists_every_edge() {
        let g = BipartiteGraph::from_edges(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        let report = is_matching_covered(&g);
        assert!(!report.covered);
        assert_eq!(report.uncovered_edges, vec![0, 1]);
    }

    #[test]
    fn disconnected_graph_is_not_matching_covered() {
        let g = BipartiteGraph::from_edges(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let report = is_matching_covered(&g);
        assert!(!report.covered);
        assert!(report.uncovered_edges.is_empty());
        assert!(!report.connected);
    }

    #[test]
    fn odd_cycle_multigraph() {
        // Triangle plus pendant: 0-1-2-0, 2-3. Perfect matching {01, 23} only.
        let h = MultiGraph::from_edges(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(has_perfect_matching(&h));
        let report = is_matching_covered(&h);
        assert_eq!(report.uncovered_edges.len(), 2);
    }
}
