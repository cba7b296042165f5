//! Odd shores, tight cuts and separating cuts.
//!
//! Every decision has two independent implementations so that they can be
//! checked against each other: tightness by matching enumeration and by the
//! part-count criterion for bipartite hosts, separation by contraction and by
//! searching for a once-crossing perfect matching through each edge.

use crate::error::{Error, Result};
use crate::generate::{enumerate_bipartite, GenFilter};
use crate::graph::{contract_shore, edges_between, BipartiteGraph, Graph, MultiGraph, Shore, VertexSet};
use crate::matching::{is_matching_covered, matched_pairings, MatchingHost, DEFAULT_ENUMERATION_CAP};

/// Largest host order for shore enumeration.
pub const DEFAULT_SHORE_CAP: usize = 26;

/// Iterator over the odd shores of an even-order graph, one per cut, each
/// represented by the side containing vertex 0, in increasing bitmask order.
#[derive(Clone, Debug)]
pub struct OddShores {
    order: usize,
    next: u64,
    end: u64,
}

impl Iterator for OddShores {
    type Item = Shore;

    fn next(&mut self) -> Option<Shore> {
        while self.next < self.end {
            let rest = self.next;
            self.next += 1;
            let members = VertexSet::from_bits(1 | rest << 1);
            if members.len() % 2 == 1 {
                return Some(Shore::new(members, self.order).expect("odd subsets of an even set are proper"));
            }
        }
        None
    }
}

/// Odd shores of a graph of order `n`.
pub fn odd_shores(n: usize) -> Result<OddShores> {
    Error::check_cap("shore enumeration order", n, DEFAULT_SHORE_CAP)?;
    if n % 2 == 1 || n == 0 {
        return Err(Error::input(format!("odd shores are enumerated for even orders only, got {n}")));
    }
    Ok(OddShores {
        order: n,
        next: 0,
        end: 1u64 << (n - 1),
    })
}

pub fn enumerate_odd_shores<G: Graph + ?Sized>(g: &G) -> Result<OddShores> {
    odd_shores(g.order())
}

/// Number of vertices of `members` whose mate lies outside it, i.e. `|M ∩ ∂(X)|`.
pub(crate) fn crossing_count(mates: &[usize], members: VertexSet) -> usize {
    members.iter().filter(|&v| !members.contains(mates[v])).count()
}

/// Does every pairing cross `∂(X)` exactly once?
pub(crate) fn crossed_once_by_all(pairings: &[Vec<usize>], members: VertexSet) -> bool {
    pairings.iter().all(|mates| crossing_count(mates, members) == 1)
}

fn require_covered<G: MatchingHost + ?Sized>(g: &G) -> Result<()> {
    if is_matching_covered(g).covered {
        Ok(())
    } else {
        Err(Error::domain("cut tightness and separation are defined for matching covered graphs only"))
    }
}

fn require_host<G: Graph + ?Sized>(g: &G, x: &Shore) -> Result<()> {
    if x.order() != g.order() {
        return Err(Error::input(format!("shore belongs to a graph of order {}, not {}", x.order(), g.order())));
    }
    Ok(())
}

/// Tightness by enumeration: every perfect matching meets `∂(X)` exactly once.
pub fn is_tight_definitional<G: MatchingHost + ?Sized>(g: &G, x: &Shore) -> Result<bool> {
    CutAnalyzer::new(g)?.is_tight(x)
}

/// Tightness in a bipartite matching covered graph from part counts alone:
/// `||X∩A| - |X∩B|| = 1`, and no edge joins the smaller part of `X` to the
/// larger part of `X̄`.
pub fn is_tight_bipartite(g: &BipartiteGraph, x: &Shore) -> Result<bool> {
    require_host(g, x)?;
    if !x.is_odd() {
        return Err(Error::input("the part-count tightness test needs an odd shore"));
    }
    require_covered(g)?;
    Ok(tight_by_parts(g, x.members()))
}

/// Part-count tightness without the hypothesis checks.
pub(crate) fn tight_by_parts(g: &BipartiteGraph, members: VertexSet) -> bool {
    let xa = members & g.part_a();
    let xb = members & g.part_b();
    let outside = members.complement(g.order());
    let (na, nb) = (xa.len() as isize, xb.len() as isize);
    if na - nb == 1 {
        edges_between(g, xb, outside & g.part_a()).is_empty()
    } else if nb - na == 1 {
        edges_between(g, xa, outside & g.part_b()).is_empty()
    } else {
        false
    }
}

/// Separation by definition: both `C`-contractions are matching covered.
pub fn is_separating_contraction<G: MatchingHost + ?Sized>(g: &G, x: &Shore) -> Result<bool> {
    require_host(g, x)?;
    require_covered(g)?;
    Ok(separating_by_contraction(g, x))
}

fn separating_by_contraction<G: Graph + ?Sized>(g: &G, x: &Shore) -> bool {
    let covered = |shore: &Shore| {
        contract_shore(g, shore).is_ok_and(|h: MultiGraph| is_matching_covered(&h).covered)
    };
    covered(x) && covered(&x.complement())
}

/// Separation via matchings: every edge lies in a perfect matching meeting `∂(X)` once.
pub fn is_separating_matchingwise<G: MatchingHost + ?Sized>(g: &G, x: &Shore) -> Result<bool> {
    CutAnalyzer::new(g)?.is_separating(x)
}

/// Outcome of all cut tests on one shore.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutVerdict {
    pub shore: Shore,
    pub tight: bool,
    pub separating: bool,
    pub trivial: bool,
    /// Both tightness methods (when the host is bipartite) and both separation methods agree.
    pub method_agreement: bool,
}

/// Cut queries on one matching covered host, sharing a single matching enumeration.
pub struct CutAnalyzer<'g, G: MatchingHost + ?Sized> {
    graph: &'g G,
    pairings: Vec<Vec<usize>>,
}

impl<'g, G: MatchingHost + ?Sized> CutAnalyzer<'g, G> {
    pub fn new(graph: &'g G) -> Result<Self> {
        require_covered(graph)?;
        let pairings = matched_pairings(graph, DEFAULT_ENUMERATION_CAP)?;
        Ok(CutAnalyzer { graph, pairings })
    }

    /// Perfect matchings of the host as mate arrays, with parallel edges identified.
    pub fn pairings(&self) -> &[Vec<usize>] {
        &self.pairings
    }

    pub fn is_tight(&self, x: &Shore) -> Result<bool> {
        require_host(self.graph, x)?;
        Ok(crossed_once_by_all(&self.pairings, x.members()))
    }

    pub fn is_separating(&self, x: &Shore) -> Result<bool> {
        require_host(self.graph, x)?;
        let n = self.graph.order();
        let members = x.members();
        let mut reached = vec![false; n * n];
        for mates in self.pairings.iter().filter(|m| crossing_count(m, members) == 1) {
            for (v, &w) in mates.iter().enumerate() {
                reached[v * n + w] = true;
            }
        }
        Ok(self.graph.edge_list().iter().all(|&(u, v)| reached[u * n + v]))
    }

    pub fn verdict(&self, x: &Shore) -> Result<CutVerdict> {
        let tight = self.is_tight(x)?;
        let separating = self.is_separating(x)?;
        let by_contraction = separating_by_contraction(self.graph, x);
        let parts_agree = match self.graph.as_bipartite() {
            Some(b) if x.is_odd() => tight_by_parts(b, x.members()) == tight,
            _ => true,
        };
        Ok(CutVerdict {
            shore: x.canonical(),
            tight,
            separating: by_contraction,
            trivial: x.is_trivial(),
            method_agreement: parts_agree && separating == by_contraction,
        })
    }
}

/// Verdicts for every odd shore, optionally skipping trivial ones.
pub fn analyze_cuts<G: MatchingHost + ?Sized>(g: &G, nontrivial_only: bool) -> Result<Vec<CutVerdict>> {
    let analyzer = CutAnalyzer::new(g)?;
    enumerate_odd_shores(g)?
        .filter(|x| !nontrivial_only || !x.is_trivial())
        .map(|x| analyzer.verdict(&x))
        .collect()
}

/// Largest order searched by [`find_separating_not_tight`].
pub const WITNESS_ORDER_CAP: usize = 7;

/// A matching covered graph with a nontrivial cut that is separating but not tight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingWitness {
    pub host: MultiGraph,
    pub shore: Shore,
}

/// Smallest witness among simple graphs of order at most `max_n`, searched by
/// increasing order, then edge count, then edge bitmask over the pairs
/// `(0,1), (0,2), ..., (n-2,n-1)`.
///
/// Bipartite graphs never qualify: in a bipartite matching covered graph every
/// separating cut is tight, so the search ranges over general graphs.
pub fn find_separating_not_tight(max_n: usize) -> Result<Option<SeparatingWitness>> {
    for n in (4..=max_n).step_by(2) {
        Error::check_cap("witness search order", n, WITNESS_ORDER_CAP)?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut masks: Vec<u32> = (0..1u32 << pairs.len()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for mask in masks {
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            let host = MultiGraph::from_edges(n, edges)?;
            if let Some(shore) = witness_shore(&host)? {
                return Ok(Some(SeparatingWitness { host, shore }));
            }
        }
    }
    Ok(None)
}

/// Does some census bipartite matching covered graph with parts of size `half`
/// have a nontrivial separating cut that is not tight? Expected never.
pub fn bipartite_separating_not_tight(half: usize) -> Result<Option<(BipartiteGraph, Shore)>> {
    let filter = GenFilter {
        require_matching_covered: true,
        ..GenFilter::none()
    };
    for g in enumerate_bipartite(half, half, filter)? {
        let analyzer = CutAnalyzer::new(&g)?;
        for x in enumerate_odd_shores(&g)?.filter(|x| !x.is_trivial()) {
            if !analyzer.is_tight(&x)? && analyzer.is_separating(&x)? {
                return Ok(Some((g, x)));
            }
        }
    }
    Ok(None)
}

fn witness_shore(host: &MultiGraph) -> Result<Option<Shore>> {
    if host.order() < 6 || !is_matching_covered(host).covered {
        return Ok(None);
    }
    let analyzer = CutAnalyzer::new(host)?;
    for x in enumerate_odd_shores(host)?.filter(|x| !x.is_trivial()) {
        if !analyzer.is_tight(&x)? && analyzer.is_separating(&x)? && separating_by_contraction(host, &x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
