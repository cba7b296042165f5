#![allow(dead_code)]

use std::collections::BTreeSet;

use braces::generate::canonical_form;
use braces::{BipartiteGraph, Graph};
use rand::Rng;

/// Permanent of the biadjacency matrix by Ryser's inclusion-exclusion formula.
pub fn ryser_permanent(g: &BipartiteGraph) -> i128 {
    let (a, b) = g.part_sizes();
    assert_eq!(a, b, "permanent of a square matrix only");
    if a == 0 {
        return 1;
    }
    let rows = g.biadjacency();
    let mut total: i128 = 0;
    for s in 1u64..(1 << a) {
        let mut product: i128 = 1;
        for &row in &rows {
            product *= i128::from((row & s).count_ones());
            if product == 0 {
                break;
            }
        }
        let sign = if (a - s.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * product;
    }
    total
}

/// A random balanced bipartite graph with parts of size `half` and edge probability `p`.
pub fn random_balanced(rng: &mut impl Rng, half: usize, p: f64) -> BipartiteGraph {
    let rows: Vec<u64> = (0..half)
        .map(|_| (0..half).filter(|_| rng.gen_bool(p)).fold(0u64, |acc, j| acc | 1 << j))
        .collect();
    BipartiteGraph::from_biadjacency(half, half, &rows).unwrap()
}

/// Canonical forms of all connected graphs with parts `a` and `b`, by exhaustive
/// labelled enumeration with no pruning.
pub fn brute_force_classes(a: usize, b: usize, keep: impl Fn(&BipartiteGraph) -> bool) -> BTreeSet<String> {
    let bits = a * b;
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << bits) {
        let rows: Vec<u64> = (0..a).map(|i| (mask >> (i * b)) & ((1 << b) - 1)).collect();
        let g = BipartiteGraph::from_biadjacency(a, b, &rows).unwrap();
        if g.is_connected() && keep(&g) {
            out.insert(canonical_form(&g).unwrap().to_hex());
        }
    }
    out
}

fn adjacency_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    adj
}

fn route(adj: &[Vec<bool>], pairs: &[(usize, usize)], used: &mut [bool]) -> bool {
    let Some((&(s, t), rest)) = pairs.split_first() else {
        return true;
    };
    (adj[s][t] && route(adj, rest, used)) || extend(adj, s, t, rest, used)
}

/// Grows a path from `at` towards `t` through unused vertices, routing the
/// remaining pairs once it closes.
fn extend(adj: &[Vec<bool>], at: usize, t: usize, rest: &[(usize, usize)], used: &mut [bool]) -> bool {
    for w in 0..adj.len() {
        if !adj[at][w] || used[w] {
            continue;
        }
        used[w] = true;
        if (adj[w][t] && route(adj, rest, used)) || extend(adj, w, t, rest, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Whether the graph contains a subdivision of K5 or K3,3, by trying every
/// branch vertex placement and routing internally disjoint paths through the
/// remaining vertices.
pub fn has_kuratowski_subdivision(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = adjacency_matrix(n, edges);
    let degree = |v: usize| adj[v].iter().filter(|&&x| x).count();
    for branch in subsets(n, 5) {
        if branch.iter().any(|&v| degree(v) < 4) {
            continue;
        }
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((branch[i], branch[j]));
            }
        }
        let mut used = vec![false; n];
        branch.iter().for_each(|&v| used[v] = true);
        if route(&adj, &pairs, &mut used) {
            return true;
        }
    }
    for branch in subsets(n, 6) {
        if branch.iter().any(|&v| degree(v) < 3) {
            continue;
        }
        for side in subsets(6, 3).into_iter().filter(|s| s[0] == 0) {
            let left: Vec<usize> = side.iter().map(|&i| branch[i]).collect();
            let right: Vec<usize> = (0..6).filter(|i| !side.contains(i)).map(|i| branch[i]).collect();
            let pairs: Vec<(usize, usize)> = left.iter().flat_map(|&l| right.iter().map(move |&r| (l, r))).collect();
            let mut used = vec![false; n];
            branch.iter().for_each(|&v| used[v] = true);
            if route(&adj, &pairs, &mut used) {
                return true;
            }
        }
    }
    false
}

/// Perfect matchings counted by plain backtracking over rows.
pub fn all_perfect_matchings_brute(g: &BipartiteGraph) -> usize {
    let (a, b) = g.part_sizes();
    if a != b {
        return 0;
    }
    let rows = g.biadjacency();
    fn go(rows: &[u64], i: usize, used: u64) -> usize {
        if i == rows.len() {
            return 1;
        }
        let mut free = rows[i] & !used;
        let mut total = 0;
        while free != 0 {
            let j = free.trailing_zeros();
            free &= free - 1;
            total += go(rows, i + 1, used | 1 << j);
        }
        total
    }
    go(&rows, 0, 0)
}
