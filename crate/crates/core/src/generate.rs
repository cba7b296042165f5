//! Named graph constructors, canonical forms, and orderly enumeration of
//! connected bipartite graphs.
//!
//! A bipartite graph on parts of size `r <= c` is handled as an `r x c`
//! biadjacency matrix whose columns are `r`-bit masks. Column order is
//! quotiented out by keeping columns sorted; row order is quotiented out by
//! requiring the sorted column sequence to be lexicographically minimal over
//! all row permutations. The minimality test is inherited by prefixes, so the
//! search can reject a partial matrix as soon as it stops being minimal.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{is_brace, BraceMethod};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::matching::is_matching_covered;
use crate::planarity::is_planar;

/// Largest total order accepted by [`enumerate_bipartite`].
pub const DEFAULT_GENERATION_CAP: usize = 14;

/// Largest smaller part accepted by [`canonical_form`].
pub const CANONICAL_PART_CAP: usize = 10;

/// Constructs one of the built-in graphs.
///
/// Known names: `c4` (any even cycle `c2k`), `path4`, `q3`, `heawood`, and
/// complete bipartite graphs `ka,b` such as `k3,3`.
pub fn named_graph(name: &str) -> Result<BipartiteGraph> {
    let key = name.trim().to_ascii_lowercase();
    let g = match key.as_str() {
        "path4" | "p4" => BipartiteGraph::from_edges(2, 2, vec![(0, 0), (1, 0), (1, 1)])?,
        "q3" | "cube" => cube(),
        "heawood" => heawood(),
        _ => {
            if let Some(rest) = key.strip_prefix('k') {
                let (a, b) = rest
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .ok_or_else(|| Error::input(format!("unknown graph name `{name}`")))?;
                if a == 0 || b == 0 || a + b > crate::graph::MAX_VERTICES {
                    return Err(Error::input(format!("complete bipartite graph `{name}` has unsupported part sizes")));
                }
                BipartiteGraph::from_edges(a, b, (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect())?
            } else if let Some(len) = key.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                if len < 4 || len % 2 == 1 || len > crate::graph::MAX_VERTICES {
                    return Err(Error::input(format!("cycle `{name}` must have even length between 4 and 64")));
                }
                let k = len / 2;
                // a0 b0 a1 b1 ... a(k-1) b(k-1) a0
                let edges = (0..k).flat_map(|i| [(i, i), ((i + 1) % k, i)]).collect();
                BipartiteGraph::from_edges(k, k, edges)?
            } else {
                return Err(Error::input(format!("unknown graph name `{name}`")));
            }
        }
    };
    Ok(g.with_name(key))
}

/// The 3-cube with vertices named by their coordinates; even-weight words form part A.
fn cube() -> BipartiteGraph {
    let even: Vec<u32> = (0..8).filter(|w: &u32| w.count_ones().is_multiple_of(2)).collect();
    let odd: Vec<u32> = (0..8).filter(|w: &u32| w.count_ones() % 2 == 1).collect();
    let name = |w: u32| format!("{:03b}", w);
    let mut edges = Vec::new();
    for (i, &x) in even.iter().enumerate() {
        for (j, &y) in odd.iter().enumerate() {
            if (x ^ y).count_ones() == 1 {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(even.into_iter().map(name).collect(), odd.into_iter().map(name).collect(), edges)
        .expect("cube is a valid bipartite graph")
}

/// Point-line incidence graph of the Fano plane, lines `{i, i+1, i+3} mod 7`.
fn heawood() -> BipartiteGraph {
    let points = (0..7).map(|i| format!("p{i}")).collect();
    let lines = (0..7).map(|i| format!("l{i}")).collect();
    let edges = (0..7).flat_map(|l| [0, 1, 3].map(|d| ((l + d) % 7, l))).collect();
    BipartiteGraph::new(points, lines, edges).expect("Heawood graph is a valid bipartite graph")
}

/// Canonical encoding of a bipartite graph up to relabelling inside each part
/// and exchange of the parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl From<CanonicalForm> for String {
    fn from(c: CanonicalForm) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for CanonicalForm {
    type Error = hex::FromHexError;
    fn try_from(s: String) -> std::result::Result<Self, Self::Error> {
        hex::decode(s).map(CanonicalForm)
    }
}

/// Canonical form: orient so the smaller part indexes rows (both orientations
/// when the parts are equal), then take the lexicographically least sorted
/// column-mask sequence over all row orders compatible with a degree-based
/// refinement of the rows.
pub fn canonical_form(g: &BipartiteGraph) -> Result<CanonicalForm> {
    let (a, b) = g.part_sizes();
    let (r, c) = (a.min(b), a.max(b));
    Error::check_cap("smaller part for canonical labelling", r, CANONICAL_PART_CAP)?;
    Error::check_cap("larger part for canonical labelling", c, 32)?;
    let rows = g.biadjacency();
    let mut best: Option<Vec<u32>> = None;
    let mut consider = |rows: &[u32], width: usize| {
        let candidate = min_column_sequence(rows, width);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    let as_u32: Vec<u32> = rows.iter().map(|&x| x as u32).collect();
    let transposed = transpose(&as_u32, a, b);
    if a <= b {
        consider(&as_u32, b);
    }
    if b <= a {
        consider(&transposed, a);
    }
    let mut bytes = vec![r as u8, c as u8];
    for col in best.expect("at least one orientation") {
        bytes.extend_from_slice(&col.to_le_bytes());
    }
    Ok(CanonicalForm(bytes))
}

fn transpose(rows: &[u32], a: usize, b: usize) -> Vec<u32> {
    (0..b)
        .map(|j| (0..a).filter(|&i| rows[i] >> j & 1 == 1).fold(0u32, |m, i| m | 1 << i))
        .collect()
}

/// Least sorted column sequence over refined row orders. `rows[i]` is a mask over `width` columns.
fn min_column_sequence(rows: &[u32], width: usize) -> Vec<u32> {
    let col_degree: Vec<u32> = (0..width)
        .map(|j| rows.iter().filter(|&&row| row >> j & 1 == 1).count() as u32)
        .collect();
    // Row key: own degree, then the sorted degrees of its neighbours.
    let key = |row: u32| {
        let mut nbr: Vec<u32> = (0..width).filter(|&j| row >> j & 1 == 1).map(|j| col_degree[j]).collect();
        nbr.sort_unstable();
        (row.count_ones(), nbr)
    };
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| key(rows[i]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match classes.last_mut() {
            Some(class) if key(rows[class[0]]) == key(rows[i]) => class.push(i),
            _ => classes.push(vec![i]),
        }
    }

    struct Search<'a> {
        rows: &'a [u32],
        width: usize,
        classes: Vec<Vec<usize>>,
        best: Option<Vec<u32>>,
    }

    impl Search<'_> {
        fn run(&mut self, class: usize, used: &mut Vec<bool>, position: usize, cols: &mut Vec<u32>) {
            if class == self.classes.len() {
                let mut seq = cols.clone();
                seq.sort_unstable();
                if self.best.as_ref().is_none_or(|b| seq < *b) {
                    self.best = Some(seq);
                }
                return;
            }
            let members = self.classes[class].clone();
            let placed = members.iter().filter(|&&i| used[i]).count();
            if placed == members.len() {
                self.run(class + 1, used, position, cols);
                return;
            }
            for &i in &members {
                if used[i] {
                    continue;
                }
                used[i] = true;
                let saved = cols.clone();
                for (j, col) in cols.iter_mut().enumerate().take(self.width) {
                    if self.rows[i] >> j & 1 == 1 {
                        *col |= 1 << position;
                    }
                }
                self.run(class, used, position + 1, cols);
                *cols = saved;
                used[i] = false;
            }
        }
    }

    let mut search = Search {
        rows,
        width,
        classes,
        best: None,
    };
    search.run(0, &mut vec![false; rows.len()], 0, &mut vec![0u32; width]);
    search.best.unwrap_or_default()
}

/// Edge-count prune applied during generation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxEdgesRule {
    #[default]
    None,
    /// `m <= 2n - 4`, the edge bound for connected planar bipartite graphs with `n >= 3`.
    BipartitePlanar,
}

/// Conjunctive filter for [`enumerate_bipartite`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFilter {
    pub min_degree: usize,
    pub require_matching_covered: bool,
    pub require_brace: bool,
    pub require_planar: bool,
    pub max_edges_rule: MaxEdgesRule,
}

impl GenFilter {
    pub fn none() -> Self {
        Self::default()
    }

    /// Braces, with the minimum-degree prune valid for braces on at least six vertices.
    pub fn braces(order: usize) -> Self {
        GenFilter {
            min_degree: if order >= 6 { 3 } else { 1 },
            require_matching_covered: true,
            require_brace: true,
            ..Self::default()
        }
    }

    pub fn planar_braces(order: usize) -> Self {
        GenFilter {
            require_planar: true,
            max_edges_rule: MaxEdgesRule::BipartitePlanar,
            ..Self::braces(order)
        }
    }

    /// Post-hoc check of every condition, using the analysis modules directly.
    pub fn accepts(&self, g: &BipartiteGraph) -> bool {
        let n = g.order();
        g.is_connected()
            && (0..n).all(|v| g.degree(v) >= self.min_degree)
            && (self.max_edges_rule == MaxEdgesRule::None || n < 3 || g.size() + 4 <= 2 * n)
            && (!self.require_matching_covered || is_matching_covered(g).covered)
            && (!self.require_brace || is_brace(g, BraceMethod::TightCutFree).is_ok_and(|v| v.is_brace))
            && (!self.require_planar || is_planar(g).planar)
    }
}

/// Counters from one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStats {
    /// Connected graphs surviving the structural prunes, before the expensive filters.
    pub candidates: usize,
    /// Graphs passing the whole filter.
    pub emitted: usize,
}

/// One representative per isomorphism class of connected bipartite graphs with
/// parts of sizes `a` and `b` passing `filter`, sorted by canonical form.
pub fn enumerate_bipartite(a: usize, b: usize, filter: GenFilter) -> Result<Vec<BipartiteGraph>> {
    enumerate_bipartite_with_stats(a, b, filter, None).map(|(graphs, _)| graphs)
}

/// As [`enumerate_bipartite`], optionally on a dedicated pool of `jobs` threads.
pub fn enumerate_bipartite_with_stats(
    a: usize,
    b: usize,
    filter: GenFilter,
    jobs: Option<usize>,
) -> Result<(Vec<BipartiteGraph>, GenerationStats)> {
    if a == 0 || b == 0 {
        return Err(Error::input("both parts must be non-empty"));
    }
    Error::check_cap("generation order", a + b, DEFAULT_GENERATION_CAP)?;
    if (filter.require_matching_covered || filter.require_brace) && a != b {
        return Ok((Vec::new(), GenerationStats::default()));
    }
    match jobs {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))?;
            pool.install(|| generate(a, b, filter))
        }
        None => generate(a, b, filter),
    }
}

fn generate(a: usize, b: usize, filter: GenFilter) -> Result<(Vec<BipartiteGraph>, GenerationStats)> {
    let (r, c) = (a.min(b), a.max(b));
    let n = a + b;
    let generator = Orderly::new(r, c, filter);
    let firsts: Vec<u8> = (1..1u16 << r).map(|x| x as u8).filter(|&x| generator.column_allowed(x)).collect();
    let per_branch: Vec<(Vec<Vec<u8>>, usize)> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut candidates = 0;
            let mut cols = vec![first];
            if generator.feasible(&cols) && generator.row_canonical(&cols) {
                generator.extend(&mut cols, &mut out, &mut candidates);
            }
            (out, candidates)
        })
        .collect();

    let mut stats = GenerationStats::default();
    let mut matrices = Vec::new();
    for (out, candidates) in per_branch {
        stats.candidates += candidates;
        matrices.extend(out);
    }
    let mut graphs: Vec<(CanonicalForm, BipartiteGraph)> = matrices
        .par_iter()
        .filter_map(|cols| {
            let g = matrix_to_graph(r, c, cols, a <= b);
            let passes = (filter.min_degree <= 1 || (0..n).all(|v| g.degree(v) >= filter.min_degree))
                && (!filter.require_matching_covered || is_matching_covered(&g).covered)
                && (!filter.require_brace || is_brace(&g, BraceMethod::TightCutFree).is_ok_and(|v| v.is_brace))
                && (!filter.require_planar || is_planar(&g).planar);
            passes.then(|| (canonical_form(&g).expect("generated graphs are within the canonical cap"), g))
        })
        .collect();
    graphs.sort_by(|x, y| x.0.cmp(&y.0));
    stats.emitted = graphs.len();
    Ok((graphs.into_iter().map(|(_, g)| g).collect(), stats))
}

/// Builds the graph for `r` rows and column masks `cols`; rows are part A when `rows_are_a`.
fn matrix_to_graph(r: usize, c: usize, cols: &[u8], rows_are_a: bool) -> BipartiteGraph {
    let mut edges = Vec::new();
    for (j, &col) in cols.iter().enumerate() {
        for i in 0..r {
            if col >> i & 1 == 1 {
                edges.push(if rows_are_a { (i, j) } else { (j, i) });
            }
        }
    }
    let (a, b) = if rows_are_a { (r, c) } else { (c, r) };
    BipartiteGraph::from_edges(a, b, edges).expect("generated matrices are valid graphs")
}

struct Orderly {
    r: usize,
    c: usize,
    filter: GenFilter,
    /// `maps[p * 2^r + m]`: mask `m` with its bits moved by row permutation `p`.
    maps: Vec<u8>,
    perm_count: usize,
    max_edges: usize,
}

impl Orderly {
    fn new(r: usize, c: usize, filter: GenFilter) -> Self {
        let perms = permutations(r);
        let width = 1usize << r;
        let mut maps = vec![0u8; perms.len() * width];
        for (p, perm) in perms.iter().enumerate() {
            for m in 0..width {
                let mut image = 0u8;
                for (i, &target) in perm.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        image |= 1 << target;
                    }
                }
                maps[p * width + m] = image;
            }
        }
        let n = r + c;
        let max_edges = match filter.max_edges_rule {
            MaxEdgesRule::BipartitePlanar if n >= 3 => 2 * n - 4,
            _ => usize::MAX,
        };
        Orderly {
            r,
            c,
            filter,
            maps,
            perm_count: perms.len(),
            max_edges,
        }
    }

    fn min_degree(&self) -> usize {
        self.filter.min_degree.max(1)
    }

    fn column_allowed(&self, col: u8) -> bool {
        col.count_ones() as usize >= self.min_degree()
    }

    /// Degree and edge-count prunes that every prefix of an accepted matrix passes.
    fn feasible(&self, cols: &[u8]) -> bool {
        let remaining = self.c - cols.len();
        let edges: usize = cols.iter().map(|c| c.count_ones() as usize).sum();
        if edges > self.max_edges {
            return false;
        }
        (0..self.r).all(|i| cols.iter().filter(|&&col| col >> i & 1 == 1).count() + remaining >= self.min_degree())
    }

    /// Is some row permutation able to make the sorted image of `seq` smaller than `target`?
    fn exists_smaller(&self, seq: &[u8], target: &[u8]) -> bool {
        let width = 1usize << self.r;
        let mut image = [0u8; 16];
        let k = seq.len();
        for p in 1..self.perm_count {
            let map = &self.maps[p * width..(p + 1) * width];
            for (slot, &col) in image.iter_mut().zip(seq) {
                *slot = map[col as usize];
            }
            image[..k].sort_unstable();
            if image[..k] < *target {
                return true;
            }
        }
        false
    }

    fn row_canonical(&self, cols: &[u8]) -> bool {
        !self.exists_smaller(cols, cols)
    }

    fn extend(&self, cols: &mut Vec<u8>, out: &mut Vec<Vec<u8>>, candidates: &mut usize) {
        if cols.len() == self.c {
            if self.accept_leaf(cols) {
                *candidates += 1;
                out.push(cols.clone());
            }
            return;
        }
        let last = *cols.last().expect("extend starts from a non-empty prefix");
        for next in last..=((1u16 << self.r) - 1) as u8 {
            if !self.column_allowed(next) {
                continue;
            }
            cols.push(next);
            if self.feasible(cols) && self.row_canonical(cols) {
                self.extend(cols, out, candidates);
            }
            cols.pop();
        }
    }

    fn accept_leaf(&self, cols: &[u8]) -> bool {
        if self.r == self.c {
            // Part exchange: the transposed orientation must not give a smaller form.
            let rows: Vec<u8> = (0..self.r)
                .map(|i| cols.iter().enumerate().filter(|(_, &col)| col >> i & 1 == 1).fold(0u8, |m, (j, _)| m | 1 << j))
                .collect();
            let mut sorted_rows = rows.clone();
            sorted_rows.sort_unstable();
            if sorted_rows.as_slice() < cols || self.exists_smaller(&rows, cols) {
                return false;
            }
        }
        let mut adjacency = vec![0u8; self.r];
        for &col in cols {
            for (i, slot) in adjacency.iter_mut().enumerate() {
                if col >> i & 1 == 1 {
                    *slot |= col;
                }
            }
        }
        // Rows sharing a column are linked; the graph is connected iff rows form
        // one class, since every column is non-empty.
        let mut reached = 1u8;
        loop {
            let next = (0..self.r).filter(|&i| reached >> i & 1 == 1).fold(reached, |m, i| m | adjacency[i]);
            if next == reached {
                break;
            }
            reached = next;
        }
        reached.count_ones() as usize == self.r
    }
}

/// All permutations of `0..n`, identity first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}
