//! Immutable simple graphs on at most 64 vertices.
//!
//! Vertices are the integers `0..n`; each adjacency row is a single `u64`.
//! The edge list is kept sorted lexicographically and its position order is
//! the coordinate system used by every GF(2) edge vector in the crate.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`Graph::new`].
pub const MAX_VERTICES: usize = 64;

const NO_EDGE: u32 = u32::MAX;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A subset of `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    n: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { bits: 0, n }
    }

    pub fn full(n: usize) -> Self {
        VertexSet { bits: full_mask(n), n }
    }

    /// Builds a set from a bit mask; bits at or above `n` are rejected.
    pub fn from_mask(n: usize, bits: u64) -> Result<Self> {
        if bits & !full_mask(n) != 0 {
            let vertex = 63 - bits.leading_zeros() as usize;
            return Err(Error::OutOfRange { vertex, n });
        }
        Ok(VertexSet { bits, n })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= n {
                return Err(Error::OutOfRange { vertex: v, n });
            }
            bits |= bit(v);
        }
        Ok(VertexSet { bits, n })
    }

    /// Set of `lo..hi`.
    pub fn range(n: usize, lo: usize, hi: usize) -> Self {
        let hi = hi.min(n);
        let bits = if lo >= hi { 0 } else { full_mask(hi) & !full_mask(lo) };
        VertexSet { bits, n }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.bits |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits &= !bit(v);
    }

    pub fn complement(&self) -> Self {
        VertexSet { bits: !self.bits & full_mask(self.n), n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        VertexSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet { bits: self.bits & other.bits, n: self.n }
    }

    pub fn difference(&self, other: &Self) -> Self {
        VertexSet { bits: self.bits & !other.bits, n: self.n }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        Bits(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Serialized as the sorted vertex list.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An undirected simple graph with a fixed, sorted edge ordering.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
    edge_index: Vec<u32>,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated pairs and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adj[a] & bit(b) != 0 {
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
            list.push((a, b));
        }
        list.sort_unstable();
        let mut edge_index = vec![NO_EDGE; n * n];
        for (i, &(a, b)) in list.iter().enumerate() {
            edge_index[a * n + b] = i as u32;
            edge_index[b * n + a] = i as u32;
        }
        Ok(Graph { n, edges: list, adj, edge_index })
    }

    /// Builds a graph from adjacency rows; the rows must be symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            debug_assert_eq!(row & bit(u), 0);
            for v in Bits(row & !full_mask(u + 1)) {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("adjacency rows describe a simple graph")
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet { bits: self.adj[v], n: self.n }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Position of edge `uv` in the edge ordering.
    #[inline]
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_index[u * self.n + v] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `|N(v) ∩ X|`.
    #[inline]
    pub fn degree_into(&self, v: usize, x: &VertexSet) -> usize {
        (self.adj[v] & x.mask()).count_ones() as usize
    }

    /// `(δ_X(Y), Δ_X(Y))`: min and max over `y ∈ Y` of `|N(y) ∩ X|`.
    pub fn degree_stats(&self, x: &VertexSet, y: &VertexSet) -> Result<(usize, usize)> {
        if y.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut lo = usize::MAX;
        let mut hi = 0;
        for v in y.iter() {
            let d = self.degree_into(v, x);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok((lo, hi))
    }

    /// `e(X)`, the number of edges with both ends in `X`.
    pub fn edges_within(&self, x: &VertexSet) -> usize {
        let twice: usize = x.iter().map(|v| self.degree_into(v, x)).sum();
        twice / 2
    }

    /// `e(X, Y) = |{xy ∈ E : x ∈ X, y ∈ Y}|`; an edge inside `X ∩ Y` counts once.
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> usize {
        let ordered: usize = x.iter().map(|v| self.degree_into(v, y)).sum();
        ordered - self.edges_within(&x.intersection(y))
    }

    /// `(e(X), e(X, Y))`.
    pub fn edge_counts(&self, x: &VertexSet, y: &VertexSet) -> (usize, usize) {
        (self.edges_within(x), self.edges_between(x, y))
    }

    /// `G[X]` relabelled onto `0..|X|` in increasing vertex order.
    pub fn induced(&self, x: &VertexSet) -> Subgraph {
        let original = x.to_vec();
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            relabel[v] = i;
        }
        let mut adj = vec![0u64; original.len()];
        for (i, &v) in original.iter().enumerate() {
            for w in Bits(self.adj[v] & x.mask()) {
                adj[i] |= bit(relabel[w]);
            }
        }
        Subgraph { graph: Graph::from_adjacency(adj), original }
    }

    /// `G[X, Y]`: vertex set `X ∪ Y` (relabelled) with only the `X`–`Y` edges kept.
    pub fn bipartite_between(&self, x: &VertexSet, y: &VertexSet) -> Result<Subgraph> {
        if !x.is_disjoint(y) {
            return Err(Error::Overlap);
        }
        let both = x.union(y);
        let original = both.to_vec();
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            relabel[v] = i;
        }
        let mut adj = vec![0u64; original.len()];
        for (i, &v) in original.iter().enumerate() {
            let other = if x.contains(v) { y.mask() } else { x.mask() };
            for w in Bits(self.adj[v] & other) {
                adj[i] |= bit(relabel[w]);
            }
        }
        Ok(Subgraph { graph: Graph::from_adjacency(adj), original })
    }

    /// Graph on the same vertex set with the given edges removed.
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in remove {
            adj[u] &= !bit(v);
            adj[v] &= !bit(u);
        }
        Graph::from_adjacency(adj)
    }

    /// Graph on the same vertex set with the given pairs added (existing edges are kept once).
    pub fn with_edges(&self, add: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &(u, v) in add {
            for w in [u, v] {
                if w >= self.n {
                    return Err(Error::OutOfRange { vertex: w, n: self.n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Connected components, each listed by its lowest vertex first.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach(bit(s), full_mask(self.n));
            seen |= comp;
            out.push(VertexSet { bits: comp, n: self.n });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(1, full_mask(self.n)) == full_mask(self.n)
    }

    /// Vertices reachable from `start` inside `allowed`.
    pub(crate) fn reach(&self, start: u64, allowed: u64) -> u64 {
        let mut seen = start & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// BFS distances from `s` inside `allowed`; unreachable vertices get `None`.
    pub(crate) fn distances(&self, s: usize, allowed: u64) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        if allowed & bit(s) == 0 {
            return dist;
        }
        dist[s] = Some(0);
        let mut seen = bit(s);
        let mut frontier = bit(s);
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            for v in Bits(next) {
                dist[v] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Shortest path from `s` to `t` using only vertices in `allowed`.
    pub(crate) fn shortest_path(&self, s: usize, t: usize, allowed: u64) -> Option<Vec<usize>> {
        if allowed & bit(s) == 0 || allowed & bit(t) == 0 {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = bit(s);
        let mut frontier = vec![s];
        while !frontier.is_empty() && seen & bit(t) == 0 {
            let mut next = Vec::new();
            for &v in &frontier {
                for w in Bits(self.adj[v] & allowed & !seen) {
                    seen |= bit(w);
                    parent[w] = v;
                    next.push(w);
                }
            }
            frontier = next;
        }
        if seen & bit(t) == 0 {
            return None;
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

/// A relabelled subgraph together with the map back to the host's vertices.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the host vertex that became vertex `i`.
    pub original: Vec<usize>,
}

impl Subgraph {
    /// Maps a set of host vertices into the subgraph's labels, dropping vertices it does not contain.
    pub fn map_set(&self, host: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.graph.n());
        for (i, &v) in self.original.iter().enumerate() {
            if host.contains(v) {
                out.insert(i);
            }
        }
        out
    }

    pub fn lift(&self, v: usize) -> usize {
        self.original[v]
    }

    pub fn lift_path(&self, path: &[usize]) -> Vec<usize> {
        path.iter().map(|&v| self.original[v]).collect()
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// The cycle `0-1-…-(n-1)-0`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// The path `0-1-…-(n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::new(a + b, &edges)
}
