//! Planarity testing with the left-right criterion, producing a rotation
//! system for planar inputs and a Kuratowski subgraph for non-planar ones.
//!
//! All routines work on the simple graph underlying the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

/// Shape of a Kuratowski subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiCertificate {
    pub kind: KuratowskiKind,
    /// Vertex pairs of the subdivision.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    /// Clockwise neighbour order around each vertex.
    pub embedding: Option<Vec<Vec<usize>>>,
    pub face_count: Option<usize>,
    pub certificate: Option<KuratowskiCertificate>,
}

fn simple_edges<G: Graph + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edge_list().to_vec();
    edges.sort_unstable();
    edges.dedup();
    edges
}

pub fn is_planar<G: Graph + ?Sized>(g: &G) -> PlanarityVerdict {
    let n = g.order();
    let edges = simple_edges(g);
    match lr_embedding(n, &edges) {
        Some(rotation) => {
            let faces = count_faces(n, &edges, &rotation);
            PlanarityVerdict {
                planar: true,
                embedding: Some(rotation),
                face_count: Some(faces),
                certificate: None,
            }
        }
        None => PlanarityVerdict {
            planar: false,
            embedding: None,
            face_count: None,
            certificate: kuratowski_subgraph(n, &edges),
        },
    }
}

/// `m <= 2n - 4`, which every connected planar bipartite graph on `n >= 3` vertices satisfies.
pub fn bipartite_edge_bound(g: &BipartiteGraph) -> Result<bool> {
    if g.order() < 3 || !g.is_connected() {
        return Err(Error::input("the bipartite edge bound needs a connected graph on at least three vertices"));
    }
    Ok(g.size() + 4 <= 2 * g.order())
}

/// Retraces the faces of the verdict's rotation system and checks `n - m + f = 2`.
pub fn euler_check<G: Graph + ?Sized>(verdict: &PlanarityVerdict, g: &G) -> Result<bool> {
    let rotation = verdict
        .embedding
        .as_ref()
        .ok_or_else(|| Error::input("no embedding to check"))?;
    if !g.is_connected() {
        return Err(Error::input("Euler's formula is checked on connected graphs only"));
    }
    let n = g.order();
    let edges = simple_edges(g);
    if rotation.len() != n {
        return Err(Error::input("rotation system does not match the graph"));
    }
    for (v, around) in rotation.iter().enumerate() {
        let mut sorted = around.clone();
        sorted.sort_unstable();
        let expected: Vec<usize> = (0..n).filter(|&w| g.adjacency(v).contains(w)).collect();
        if sorted != expected {
            return Err(Error::input(format!("rotation at vertex {v} does not list its neighbours")));
        }
    }
    let f = count_faces(n, &edges, rotation) as isize;
    Ok(n as isize - edges.len() as isize + f == 2)
}

/// Faces of a rotation system; an edgeless graph has one face. For a
/// disconnected graph the outer faces of the components are counted once.
fn count_faces(n: usize, edges: &[(usize, usize)], rotation: &[Vec<usize>]) -> usize {
    if edges.is_empty() {
        return 1;
    }
    // position[v][w]: index of w in rotation[v].
    let mut position = vec![vec![usize::MAX; n]; n];
    for (v, around) in rotation.iter().enumerate() {
        for (i, &w) in around.iter().enumerate() {
            position[v][w] = i;
        }
    }
    let mut seen = vec![vec![false; n]; n];
    let mut faces = 0;
    for &(a, b) in edges {
        for (v, w) in [(a, b), (b, a)] {
            if seen[v][w] {
                continue;
            }
            faces += 1;
            let (mut x, mut y) = (v, w);
            while !seen[x][y] {
                seen[x][y] = true;
                // The face continues to the neighbour of y just before x in clockwise order.
                let around = &rotation[y];
                let i = position[y][x];
                let next = around[(i + around.len() - 1) % around.len()];
                x = y;
                y = next;
            }
        }
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut component = vec![usize::MAX; n];
    let mut components_with_edges = 0;
    for s in 0..n {
        if component[s] != usize::MAX || adjacency[s].is_empty() {
            continue;
        }
        components_with_edges += 1;
        let mut stack = vec![s];
        component[s] = s;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if component[w] == usize::MAX {
                    component[w] = s;
                    stack.push(w);
                }
            }
        }
    }
    faces + 1 - components_with_edges
}

/// Rotation system of a planar graph, or `None` when the graph is not planar.
fn lr_embedding(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if n > 2 && edges.len() > 3 * n - 6 {
        return None;
    }
    let mut state = LrState::new(n, edges);
    for v in 0..n {
        if state.height[v] == NONE {
            state.height[v] = 0;
            state.roots.push(v);
            state.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut state.out[v]);
        out.sort_by_key(|&w| state.nesting_depth[state.id(v, w)]);
        state.out[v] = out;
    }
    for r in state.roots.clone() {
        if !state.test(r) {
            return None;
        }
    }
    Some(state.embed())
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Rotation under construction: `cw[v][w]`/`ccw[v][w]` are the neighbours of
/// `v` after/before `w` in clockwise order.
struct Rotation {
    cw: Vec<Vec<usize>>,
    ccw: Vec<Vec<usize>>,
    first: Vec<usize>,
}

impl Rotation {
    fn new(n: usize) -> Self {
        Rotation {
            cw: vec![vec![NONE; n]; n],
            ccw: vec![vec![NONE; n]; n],
            first: vec![NONE; n],
        }
    }

    fn add_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw[start][end] = end;
                self.ccw[start][end] = end;
                self.first[start] = end;
            }
            Some(r) => {
                let after = self.cw[start][r];
                self.cw[start][r] = end;
                self.cw[start][end] = after;
                self.ccw[start][after] = end;
                self.ccw[start][end] = r;
            }
        }
    }

    fn add_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(start, end, None),
            Some(r) => {
                let before = self.ccw[start][r];
                self.add_cw(start, end, Some(before));
                if self.first[start] == r {
                    self.first[start] = end;
                }
            }
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let reference = (self.first[start] != NONE).then_some(self.first[start]);
        self.add_ccw(start, end, reference);
    }

    fn into_lists(self) -> Vec<Vec<usize>> {
        (0..self.first.len())
            .map(|v| {
                let mut around = Vec::new();
                let start = self.first[v];
                if start != NONE {
                    let mut w = start;
                    loop {
                        around.push(w);
                        w = self.cw[v][w];
                        if w == start {
                            break;
                        }
                    }
                }
                around
            })
            .collect()
    }
}

/// Working state of the left-right test. Directed edges are identified by `v * n + w`.
struct LrState {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    oriented: Vec<bool>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<isize>,
    reference: Vec<Option<usize>>,
    side: Vec<isize>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

impl LrState {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let darts = n * n;
        LrState {
            n,
            adjacency,
            oriented: vec![false; darts],
            out: vec![Vec::new(); n],
            roots: Vec::new(),
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; darts],
            lowpt2: vec![0; darts],
            nesting_depth: vec![0; darts],
            reference: vec![None; darts],
            side: vec![1; darts],
            lowpt_edge: vec![NONE; darts],
            stack_bottom: vec![0; darts],
            stack: Vec::new(),
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
        }
    }

    fn id(&self, v: usize, w: usize) -> usize {
        v * self.n + w
    }

    fn source(&self, e: usize) -> usize {
        e / self.n
    }

    fn target(&self, e: usize) -> usize {
        e % self.n
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adjacency[v].len() {
            let w = self.adjacency[v][i];
            if self.oriented[self.id(v, w)] || self.oriented[self.id(w, v)] {
                continue;
            }
            let vw = self.id(v, w);
            self.oriented[vw] = true;
            self.out[v].push(w);
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as isize;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, interval: &Interval, b: usize) -> bool {
        match interval.high {
            Some(h) if !interval.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for (i, &w) in out.iter().enumerate() {
            let ei = self.id(v, w);
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("right interval is non-empty");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source(e);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.target(h) != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.target(h) != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("an edge with a return edge leaves a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> isize {
        if let Some(r) = self.reference[e] {
            let s = self.sign(r);
            self.side[e] *= s;
            self.reference[e] = None;
        }
        self.side[e]
    }

    fn embed(mut self) -> Vec<Vec<usize>> {
        let n = self.n;
        for v in 0..n {
            for i in 0..self.out[v].len() {
                let e = self.id(v, self.out[v][i]);
                let s = self.sign(e);
                self.nesting_depth[e] *= s;
            }
        }
        let mut rotation = Rotation::new(n);
        for v in 0..n {
            let mut out = std::mem::take(&mut self.out[v]);
            out.sort_by_key(|&w| self.nesting_depth[self.id(v, w)]);
            let mut previous = None;
            for &w in &out {
                rotation.add_cw(v, w, previous);
                previous = Some(w);
            }
            self.out[v] = out;
        }
        for r in self.roots.clone() {
            self.embed_from(r, &mut rotation);
        }
        rotation.into_lists()
    }

    fn embed_from(&mut self, v: usize, rotation: &mut Rotation) {
        let out = self.out[v].clone();
        for w in out {
            let ei = self.id(v, w);
            if ei == self.parent_edge[w] {
                rotation.add_first(w, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.embed_from(w, rotation);
            } else if self.side[ei] == 1 {
                rotation.add_cw(w, v, Some(self.right_ref[w]));
            } else {
                rotation.add_ccw(w, v, Some(self.left_ref[w]));
                self.left_ref[w] = v;
            }
        }
    }
}

/// An edge-minimal non-planar subgraph, which is necessarily a Kuratowski subdivision.
fn kuratowski_subgraph(n: usize, edges: &[(usize, usize)]) -> Option<KuratowskiCertificate> {
    let mut kept: Vec<(usize, usize)> = edges.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if lr_embedding(n, &trial).is_none() {
            kept = trial;
        } else {
            i += 1;
        }
    }
    kuratowski_kind(n, &kept).map(|kind| KuratowskiCertificate { kind, edges: kept })
}

/// Recognises an edge set forming a subdivision of `K5` or `K3,3` (ignoring isolated vertices).
pub fn kuratowski_kind(n: usize, edges: &[(usize, usize)]) -> Option<KuratowskiKind> {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a == b || a >= n || b >= n {
            return None;
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| !adjacency[v].is_empty() && adjacency[v].len() != 2).collect();
    let (kind, degree) = match branch.len() {
        5 => (KuratowskiKind::K5, 4),
        6 => (KuratowskiKind::K33, 3),
        _ => return None,
    };
    if branch.iter().any(|&v| adjacency[v].len() != degree) {
        return None;
    }
    let index = |v: usize| branch.iter().position(|&b| b == v);
    let k = branch.len();
    let mut joined = vec![vec![false; k]; k];
    let mut used = 0;
    for (bi, &start) in branch.iter().enumerate() {
        for &first in &adjacency[start] {
            let (mut prev, mut cur) = (start, first);
            let mut length = 1;
            while index(cur).is_none() {
                let next = if adjacency[cur][0] == prev { adjacency[cur][1] } else { adjacency[cur][0] };
                prev = cur;
                cur = next;
                length += 1;
                if length > edges.len() {
                    return None;
                }
            }
            let bj = index(cur).unwrap();
            if bj == bi {
                return None;
            }
            if bi < bj {
                if joined[bi][bj] {
                    return None;
                }
                joined[bi][bj] = true;
                used += length;
            }
        }
    }
    if used != edges.len() {
        return None;
    }
    match kind {
        KuratowskiKind::K5 => (0..k).all(|i| (0..k).all(|j| i == j || joined[i.min(j)][i.max(j)])).then_some(kind),
        KuratowskiKind::K33 => {
            // Two-colour the branch graph; it must be complete bipartite 3 + 3.
            let mut colour = [0u8; 6];
            colour[0] = 1;
            for j in 1..6 {
                colour[j] = if joined[0][j] { 2 } else { 1 };
            }
            let ok = colour.iter().filter(|&&c| c == 1).count() == 3
                && (0..6).all(|i| (i + 1..6).all(|j| joined[i][j] == (colour[i] != colour[j])));
            ok.then_some(kind)
        }
    }
}
