//! Brace recognition, thin-edge classification and S-cut structure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuts::{crossed_once_by_all, enumerate_odd_shores, tight_by_parts};
use crate::error::{Error, Result};
use crate::graph::{degree_profile, edges_between, neighborhood, BipartiteGraph, Graph, Shore, VertexSet};
use crate::matching::{hopcroft_karp, is_matching_covered, matched_pairings, DEFAULT_ENUMERATION_CAP};

/// Largest part scanned by the neighbourhood criterion.
pub const NEIGHBORHOOD_PART_CAP: usize = 24;

/// Largest order accepted by [`verify_cor1`].
pub const COR1_ORDER_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraceMethod {
    /// Matching covered with no nontrivial tight cut.
    TightCutFree,
    /// Every two vertex-disjoint edges extend to a perfect matching.
    TwoExtendable,
    /// `|N(X)| >= |X| + 2` for every `X` of either part with `1 <= |X| <= |part| - 2`.
    Neighborhood,
    /// All applicable methods, with agreement recorded.
    All,
}

/// Why a graph is not a brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disqualifier {
    PathOfLengthThree,
    NotMatchingCovered { connected: bool, has_perfect_matching: bool, uncovered_edges: Vec<usize> },
    NontrivialTightCut(Shore),
    /// Two vertex-disjoint edges lying in no common perfect matching.
    NonExtendablePair(usize, usize),
    /// A part subset whose neighbourhood is too small.
    SmallNeighborhood { set: VertexSet, neighborhood: VertexSet },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResults {
    pub tight_cut_free: Option<bool>,
    pub two_extendable: Option<bool>,
    pub neighborhood: Option<bool>,
}

impl MethodResults {
    /// True when every method that ran gave the same answer.
    pub fn agree(&self) -> bool {
        let ran: Vec<bool> = [self.tight_cut_free, self.two_extendable, self.neighborhood].into_iter().flatten().collect();
        ran.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceVerdict {
    pub is_brace: bool,
    pub method_results: MethodResults,
    pub disqualifier: Option<Disqualifier>,
}

fn is_path_of_length_three(g: &BipartiteGraph) -> bool {
    g.order() == 4 && g.size() == 3 && g.is_connected()
}

/// Decides whether `g` is a brace.
///
/// `TwoExtendable` and `Neighborhood` characterise braces only on six or more
/// vertices and fail with a domain error below that; under `All` they are
/// skipped there.
pub fn is_brace(g: &BipartiteGraph, method: BraceMethod) -> Result<BraceVerdict> {
    if is_path_of_length_three(g) {
        return Ok(BraceVerdict {
            is_brace: false,
            method_results: MethodResults {
                tight_cut_free: Some(false),
                ..MethodResults::default()
            },
            disqualifier: Some(Disqualifier::PathOfLengthThree),
        });
    }
    let small = g.order() < 6;
    if small && matches!(method, BraceMethod::TwoExtendable | BraceMethod::Neighborhood) {
        return Err(Error::domain(format!(
            "the {method:?} criterion characterises braces on at least six vertices, got {}",
            g.order()
        )));
    }
    let coverage = is_matching_covered(g);
    if !coverage.covered {
        let results = MethodResults {
            tight_cut_free: matches!(method, BraceMethod::TightCutFree | BraceMethod::All).then_some(false),
            two_extendable: (!small && matches!(method, BraceMethod::TwoExtendable | BraceMethod::All)).then_some(false),
            neighborhood: (!small && matches!(method, BraceMethod::Neighborhood | BraceMethod::All)).then_some(false),
        };
        return Ok(BraceVerdict {
            is_brace: false,
            method_results: results,
            disqualifier: Some(Disqualifier::NotMatchingCovered {
                connected: coverage.connected,
                has_perfect_matching: coverage.has_perfect_matching,
                uncovered_edges: coverage.uncovered_edges,
            }),
        });
    }

    let mut results = MethodResults::default();
    let mut disqualifier = None;
    let mut record = |slot: &mut Option<bool>, outcome: Result<Option<Disqualifier>>| -> Result<()> {
        let found = outcome?;
        *slot = Some(found.is_none());
        if disqualifier.is_none() {
            disqualifier = found;
        }
        Ok(())
    };
    if matches!(method, BraceMethod::TightCutFree | BraceMethod::All) {
        record(&mut results.tight_cut_free, nontrivial_tight_cut(g))?;
    }
    if !small && matches!(method, BraceMethod::TwoExtendable | BraceMethod::All) {
        record(&mut results.two_extendable, Ok(non_extendable_pair(g)))?;
    }
    if !small && matches!(method, BraceMethod::Neighborhood | BraceMethod::All) {
        record(&mut results.neighborhood, small_neighborhood(g))?;
    }
    let is_brace = match method {
        BraceMethod::TwoExtendable => results.two_extendable,
        BraceMethod::Neighborhood => results.neighborhood,
        _ => results.tight_cut_free,
    }
    .expect("the selected method ran");
    Ok(BraceVerdict {
        is_brace,
        method_results: results,
        disqualifier: if is_brace { None } else { disqualifier },
    })
}

fn nontrivial_tight_cut(g: &BipartiteGraph) -> Result<Option<Disqualifier>> {
    Ok(enumerate_odd_shores(g)?
        .find(|x| !x.is_trivial() && tight_by_parts(g, x.members()))
        .map(Disqualifier::NontrivialTightCut))
}

fn non_extendable_pair(g: &BipartiteGraph) -> Option<Disqualifier> {
    let edges = g.edge_list();
    let all = g.vertices();
    let need = g.order() / 2 - 2;
    for (e, &(u1, v1)) in edges.iter().enumerate() {
        for (f, &(u2, v2)) in edges.iter().enumerate().skip(e + 1) {
            if u1 == u2 || v1 == v2 {
                continue;
            }
            let rest = all.without(u1).without(v1).without(u2).without(v2);
            if hopcroft_karp(g, rest) != need {
                return Some(Disqualifier::NonExtendablePair(e, f));
            }
        }
    }
    None
}

fn small_neighborhood(g: &BipartiteGraph) -> Result<Option<Disqualifier>> {
    for part in [g.part_a(), g.part_b()] {
        Error::check_cap("part size for the neighbourhood criterion", part.len(), NEIGHBORHOOD_PART_CAP)?;
        let members: Vec<usize> = part.iter().collect();
        let k = members.len();
        for mask in 1u64..(1u64 << k) {
            let size = mask.count_ones() as usize;
            if size + 2 > k {
                continue;
            }
            let set: VertexSet = VertexSet::from_bits(mask).iter().map(|i| members[i]).collect();
            let nbr = neighborhood(g, set)?;
            if nbr.len() < size + 2 {
                return Ok(Some(Disqualifier::SmallNeighborhood { set, neighborhood: nbr }));
            }
        }
    }
    Ok(None)
}

/// Thinness verdict for one edge of a brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeThinness {
    pub edge: usize,
    pub thin: bool,
    /// S-cuts associated with the edge, each oriented to contain its A-endpoint,
    /// in canonical shore order.
    pub s_cuts: Vec<Shore>,
    pub g_minus_e_matching_covered: bool,
    /// Set when `G - e` is not matching covered and the enumeration fallback was used.
    pub anomaly: bool,
}

fn require_large_brace(g: &BipartiteGraph) -> Result<()> {
    if g.order() < 6 {
        return Err(Error::domain("thin edges are defined in braces with at least six vertices"));
    }
    if !is_brace(g, BraceMethod::TightCutFree)?.is_brace {
        return Err(Error::domain("thin edges are defined in braces only"));
    }
    Ok(())
}

/// Classifies every edge of a brace on at least six vertices as thin or nonthin.
pub fn classify_edges_thin(g: &BipartiteGraph) -> Result<Vec<EdgeThinness>> {
    require_large_brace(g)?;
    (0..g.size()).into_par_iter().map(|e| edge_thinness(g, e)).collect()
}

/// S-cuts associated with edge `e` of a brace; empty iff `e` is thin.
pub fn find_s_cuts(g: &BipartiteGraph, e: usize) -> Result<Vec<Shore>> {
    Ok(classify_edge_thin(g, e)?.s_cuts)
}

/// Thinness verdict for the single edge `e` of a brace.
pub fn classify_edge_thin(g: &BipartiteGraph, e: usize) -> Result<EdgeThinness> {
    if e >= g.size() {
        return Err(Error::input(format!("edge index {e} out of range for {} edges", g.size())));
    }
    require_large_brace(g)?;
    edge_thinness(g, e)
}

fn edge_thinness(g: &BipartiteGraph, e: usize) -> Result<EdgeThinness> {
    let h = g.without_edge(e);
    let covered = is_matching_covered(&h).covered;
    let u = g.edge_list()[e].0;
    let candidates = enumerate_odd_shores(&h)?.filter(|x| x.min_side() >= 5);
    let mut s_cuts: Vec<Shore> = if covered {
        candidates.filter(|x| tight_by_parts(&h, x.members())).collect()
    } else {
        let pairings = matched_pairings(&h, DEFAULT_ENUMERATION_CAP)?;
        if pairings.is_empty() {
            Vec::new()
        } else {
            candidates.filter(|x| crossed_once_by_all(&pairings, x.members())).collect()
        }
    };
    s_cuts.sort_by_key(|x| x.canonical().members());
    let s_cuts: Vec<Shore> = s_cuts.into_iter().map(|x| x.oriented_to(u)).collect();
    Ok(EdgeThinness {
        edge: e,
        thin: s_cuts.is_empty(),
        s_cuts,
        g_minus_e_matching_covered: covered,
        anomaly: !covered,
    })
}

/// With `X` the side of the cut containing the A-end `u` of `e = uv`:
/// `|X∩A| = |X∩B| - 1` and `E[X∩A, X̄∩B] = {uv}`.
pub fn s_cut_identity_holds(g: &BipartiteGraph, e: usize, x: &Shore) -> bool {
    let Some(&(u, _)) = g.edge_list().get(e) else {
        return false;
    };
    let x = x.oriented_to(u);
    let xa = x.members() & g.part_a();
    let xb = x.members() & g.part_b();
    let outside_b = x.complement().members() & g.part_b();
    xa.len() + 1 == xb.len() && edges_between(g, xa, outside_b) == [e]
}

/// Checks the neighbourhood corollary for braces: for every `X` with
/// `|X∩B| <= |B| - 2` and `N(X∩B) ⊆ X∩A`, equal part counts force `X = ∅`
/// and `|X∩A| = |X∩B| + 1` forces `X∩B = ∅`. Both part orientations are checked.
pub fn verify_cor1(g: &BipartiteGraph) -> Result<bool> {
    Error::check_cap("order for the neighbourhood corollary", g.order(), COR1_ORDER_CAP)?;
    if !is_brace(g, BraceMethod::TightCutFree)?.is_brace {
        return Err(Error::domain("the neighbourhood corollary concerns braces"));
    }
    Ok(cor1_one_side(g.part_a(), g.part_b(), g) && cor1_one_side(g.part_b(), g.part_a(), g))
}

fn cor1_one_side(a: VertexSet, b: VertexSet, g: &BipartiteGraph) -> bool {
    let b_members: Vec<usize> = b.iter().collect();
    let a_members: Vec<usize> = a.iter().collect();
    for y_mask in 0u64..(1u64 << b_members.len()) {
        if y_mask.count_ones() as usize + 2 > b_members.len() {
            continue;
        }
        let y: VertexSet = VertexSet::from_bits(y_mask).iter().map(|i| b_members[i]).collect();
        let forced = neighborhood(g, y).expect("subset of the vertex set");
        let free: Vec<usize> = a_members.iter().copied().filter(|v| !forced.contains(*v)).collect();
        for z_mask in 0u64..(1u64 << free.len()) {
            let z = forced | VertexSet::from_bits(z_mask).iter().map(|i| free[i]).collect();
            let (za, yb) = (z.len(), y.len());
            if za == yb && !(z | y).is_empty() {
                return false;
            }
            if za == yb + 1 && !y.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Nonthin edges with both ends of degree at least four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1Subgraph {
    /// Vertices of degree at least four.
    pub s1: VertexSet,
    pub edges: Vec<usize>,
    pub is_forest: bool,
}

pub fn s1_nonthin_subgraph(g: &BipartiteGraph) -> Result<S1Subgraph> {
    let thinness = classify_edges_thin(g)?;
    Ok(s1_nonthin_subgraph_from(g, &thinness))
}

/// As [`s1_nonthin_subgraph`], reusing an existing classification.
pub fn s1_nonthin_subgraph_from(g: &BipartiteGraph, thinness: &[EdgeThinness]) -> S1Subgraph {
    let s1 = degree_profile(g).high_degree_vertices();
    let edges: Vec<usize> = thinness
        .iter()
        .filter(|t| !t.thin)
        .map(|t| t.edge)
        .filter(|&e| {
            let (u, v) = g.edge_list()[e];
            s1.contains(u) && s1.contains(v)
        })
        .collect();
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut is_forest = true;
    for &e in &edges {
        let (u, v) = g.edge_list()[e];
        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
        if ru == rv {
            is_forest = false;
            break;
        }
        parent[ru] = rv;
    }
    S1Subgraph { s1, edges, is_forest }
}

/// One failure of `|X̄ ∩ Ȳ| <= 1` for S-cuts of two nonthin edges at a common vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoTerminalExcess {
    pub vertex: usize,
    pub edges: (usize, usize),
    pub shores: (Shore, Shore),
    pub outside_both: usize,
}

/// For each `u ∈ S1` on two nonthin edges and every pair of their S-cuts
/// `∂(X)`, `∂(Y)` taken with `u ∈ X` and `u ∈ Y`, reports pairs where
/// `|X̄ ∩ Ȳ| > 1`. Diagnostic only.
pub fn co_terminal_s_cut_excess(g: &BipartiteGraph, thinness: &[EdgeThinness]) -> Vec<CoTerminalExcess> {
    let s1 = degree_profile(g).high_degree_vertices();
    let mut out = Vec::new();
    for u in s1 {
        let at_u: Vec<&EdgeThinness> = thinness
            .iter()
            .filter(|t| !t.thin)
            .filter(|t| {
                let (x, y) = g.edge_list()[t.edge];
                x == u || y == u
            })
            .collect();
        for (i, first) in at_u.iter().enumerate() {
            for second in &at_u[i + 1..] {
                for x in &first.s_cuts {
                    for y in &second.s_cuts {
                        let (x, y) = (x.oriented_to(u), y.oriented_to(u));
                        let outside = (x.complement().members() & y.complement().members()).len();
                        if outside > 1 {
                            out.push(CoTerminalExcess {
                                vertex: u,
                                edges: (first.edge, second.edge),
                                shores: (x, y),
                                outside_both: outside,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}
