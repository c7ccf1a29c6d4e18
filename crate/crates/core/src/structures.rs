//! Linear forests, bipartite matchings, (m,d)-connectivity and greedy disjoint paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, Bits, Graph, VertexSet};

/// A union of vertex-disjoint paths in a host graph.
///
/// Single-vertex paths are allowed; they carry no edges. [`LinearForest::is_strict_udp`]
/// reports whether the forest also satisfies the stricter convention that every
/// path has an edge and the forest is non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForest {
    n: usize,
    paths: Vec<Vec<usize>>,
}

impl LinearForest {
    /// Validates `paths` against `g`.
    pub fn new(g: &Graph, paths: &[Vec<usize>]) -> Result<Self> {
        let n = g.n();
        let mut seen = 0u64;
        for path in paths {
            if path.is_empty() {
                return Err(Error::EmptyPath);
            }
            let mut own = 0u64;
            for &v in path {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
                if own & bit(v) != 0 {
                    return Err(Error::DegreeViolation(v));
                }
                if seen & bit(v) != 0 {
                    return Err(Error::NotDisjoint(v));
                }
                own |= bit(v);
            }
            seen |= own;
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(Error::NonEdge(w[0], w[1]));
                }
            }
        }
        let forest = LinearForest { n, paths: paths.to_vec() };
        debug_assert_eq!(forest.vertex_set().len(), forest.num_edges() + forest.num_paths());
        Ok(forest)
    }

    pub fn empty(n: usize) -> Self {
        LinearForest { n, paths: Vec::new() }
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn num_edges(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 1).sum()
    }

    /// Edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> =
            self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))).collect();
        out.sort_unstable();
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mask = self.paths.iter().flatten().fold(0u64, |acc, &v| acc | bit(v));
        VertexSet::from_mask(self.n, mask).expect("validated vertices")
    }

    /// End(𝓟): the path endpoints (a single-vertex path contributes its vertex once).
    pub fn ends(&self) -> VertexSet {
        let mask = self.paths.iter().fold(0u64, |acc, p| acc | bit(p[0]) | bit(p[p.len() - 1]));
        VertexSet::from_mask(self.n, mask).expect("validated vertices")
    }

    /// In(𝓟): vertices interior to some path.
    pub fn interior(&self) -> VertexSet {
        self.vertex_set().difference(&self.ends())
    }

    pub fn is_strict_udp(&self) -> bool {
        !self.paths.is_empty() && self.paths.iter().all(|p| p.len() >= 2)
    }

    /// `|End| + |In| = |In| + 2|𝓟| = |V(𝓟)| = |E(𝓟)| + |𝓟|`.
    ///
    /// The middle equality needs every path to have two distinct ends, so it is
    /// only checked for strict forests.
    pub fn identity_holds(&self) -> bool {
        let (ends, inner, verts) = (self.ends().len(), self.interior().len(), self.vertex_set().len());
        let base = ends + inner == verts && verts == self.num_edges() + self.num_paths();
        let all_long = self.paths.iter().all(|p| p.len() >= 2);
        base && (!all_long || ends == 2 * self.num_paths())
    }
}

/// Alias kept for call sites that read better with the operation name.
pub fn validate_udp(g: &Graph, paths: &[Vec<usize>]) -> Result<LinearForest> {
    LinearForest::new(g, paths)
}

/// Union-find with undo, no path compression.
struct UndoUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl UndoUnionFind {
    fn new(n: usize) -> Self {
        UndoUnionFind { parent: (0..n).collect(), size: vec![1; n], history: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(rb);
    }

    fn undo(&mut self) {
        let rb = self.history.pop().expect("undo after union");
        let ra = self.parent[rb];
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }
}

struct ForestSearch<'a> {
    n: usize,
    order: Vec<(usize, usize)>,
    deg: Vec<u8>,
    uf: UndoUnionFind,
    chosen: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
    g: &'a Graph,
}

impl ForestSearch<'_> {
    fn usable(&self, i: usize) -> bool {
        let (u, v) = self.order[i];
        self.deg[u] < 2 && self.deg[v] < 2
    }

    fn upper_bound(&self, from: usize) -> usize {
        let mut usable = 0;
        let mut incident = vec![0usize; self.n];
        for i in from..self.order.len() {
            if self.usable(i) {
                let (u, v) = self.order[i];
                usable += 1;
                incident[u] += 1;
                incident[v] += 1;
            }
        }
        let caps: usize = (0..self.n).map(|v| incident[v].min(2 - self.deg[v] as usize)).sum();
        self.chosen.len() + usable.min(caps / 2)
    }

    fn run(&mut self, i: usize) {
        if self.best.len() == self.ceiling {
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if i == self.order.len() || self.upper_bound(i) <= self.best.len() {
            return;
        }
        let (u, v) = self.order[i];
        if self.usable(i) && self.uf.find(u) != self.uf.find(v) {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.uf.union(u, v);
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            self.uf.undo();
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        self.run(i + 1);
    }

    fn forest(&self) -> LinearForest {
        let edges: Vec<_> = self.best.iter().map(|&i| self.order[i]).collect();
        forest_from_edges(self.g, &edges)
    }
}

/// Assembles the paths of an acyclic edge set with maximum degree 2.
fn forest_from_edges(g: &Graph, edges: &[(usize, usize)]) -> LinearForest {
    let n = g.n();
    let mut nbrs = vec![0u64; n];
    for &(u, v) in edges {
        nbrs[u] |= bit(v);
        nbrs[v] |= bit(u);
    }
    let mut seen = 0u64;
    let mut paths = Vec::new();
    for start in 0..n {
        if seen & bit(start) != 0 || nbrs[start].count_ones() != 1 {
            continue;
        }
        let mut path = vec![start];
        seen |= bit(start);
        let mut cur = start;
        while let Some(next) = Bits(nbrs[cur] & !seen).next() {
            path.push(next);
            seen |= bit(next);
            cur = next;
        }
        paths.push(path);
    }
    LinearForest::new(g, &paths).expect("edges of g forming paths")
}

/// f(G): the largest edge count of a linear forest in `g`, with a witness.
pub fn max_linear_forest(g: &Graph) -> (usize, LinearForest) {
    let n = g.n();
    let mut order: Vec<(usize, usize)> = g.edges().to_vec();
    order.sort_by_key(|&(u, v)| std::cmp::Reverse(g.degree(u) + g.degree(v)));
    let ceiling = g.components().iter().map(|c| c.len() - 1).sum();
    let mut search = ForestSearch {
        n,
        order,
        deg: vec![0; n],
        uf: UndoUnionFind::new(n),
        chosen: Vec::new(),
        best: Vec::new(),
        ceiling,
        g,
    };
    search.best = greedy_forest(&mut search);
    search.run(0);
    (search.best.len(), search.forest())
}

fn greedy_forest(search: &mut ForestSearch<'_>) -> Vec<usize> {
    let mut picked = Vec::new();
    for i in 0..search.order.len() {
        let (u, v) = search.order[i];
        if search.usable(i) && search.uf.find(u) != search.uf.find(v) {
            search.deg[u] += 1;
            search.deg[v] += 1;
            search.uf.union(u, v);
            picked.push(i);
        }
    }
    for &i in picked.iter().rev() {
        let (u, v) = search.order[i];
        search.uf.undo();
        search.deg[u] -= 1;
        search.deg[v] -= 1;
    }
    picked
}

/// A maximum matching of a bipartite graph with a König vertex cover of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    /// Matching edges as `(x, y)` with `x ∈ X`.
    pub matching: Vec<(usize, usize)>,
    pub cover: VertexSet,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }

    /// Checks the König certificate: disjoint edges of `g`, a cover of every X–Y edge, equal sizes.
    pub fn is_certificate_for(&self, g: &Graph, x: &VertexSet, y: &VertexSet) -> bool {
        let mut used = 0u64;
        for &(a, b) in &self.matching {
            if !g.has_edge(a, b) || used & (bit(a) | bit(b)) != 0 {
                return false;
            }
            used |= bit(a) | bit(b);
        }
        let covers =
            x.iter().all(|a| self.cover.contains(a) || Bits(g.adj_mask(a) & y.mask()).all(|b| self.cover.contains(b)));
        covers && self.cover.len() == self.matching.len()
    }
}

fn augment(g: &Graph, x: usize, ymask: u64, mate: &mut [Option<usize>], tried: &mut u64) -> bool {
    for y in Bits(g.adj_mask(x) & ymask & !*tried) {
        *tried |= bit(y);
        let free = match mate[y] {
            None => true,
            Some(other) => augment(g, other, ymask, mate, tried),
        };
        if free {
            mate[y] = Some(x);
            return true;
        }
    }
    false
}

fn matching_core(g: &Graph, x: &VertexSet, y: &VertexSet) -> MatchingResult {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for a in x.iter() {
        let mut tried = 0u64;
        augment(g, a, y.mask(), &mut mate, &mut tried);
    }
    let mut matching: Vec<(usize, usize)> = y.iter().filter_map(|b| mate[b].map(|a| (a, b))).collect();
    matching.sort_unstable();
    let mut partner = vec![None; n];
    for &(a, b) in &matching {
        partner[a] = Some(b);
    }
    // Alternating reachability from the unmatched X vertices.
    let mut reached = x.iter().filter(|&a| partner[a].is_none()).fold(0u64, |acc, a| acc | bit(a));
    let mut frontier = reached;
    while frontier != 0 {
        let mut next = 0u64;
        for a in Bits(frontier) {
            for b in Bits(g.adj_mask(a) & y.mask() & !reached) {
                next |= bit(b);
                if let Some(a2) = mate[b] {
                    next |= bit(a2);
                }
            }
        }
        next &= !reached;
        reached |= next;
        frontier = next & x.mask();
    }
    let cover = (x.mask() & !reached) | (y.mask() & reached);
    MatchingResult { matching, cover: VertexSet::from_mask(n, cover).expect("subset of V") }
}

/// Maximum matching and minimum vertex cover of a bipartite graph with sides `x`, `y`.
///
/// Edges touching vertices outside `x ∪ y` are ignored.
pub fn bipartite_matching(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<MatchingResult> {
    if !x.is_disjoint(y) {
        return Err(Error::Overlap);
    }
    for &(u, v) in g.edges() {
        let side = |w: usize| (x.contains(w), y.contains(w));
        let (su, sv) = (side(u), side(v));
        if (su.0 && sv.0) || (su.1 && sv.1) {
            return Err(Error::NotBipartiteInput(u, v));
        }
    }
    Ok(matching_core(g, x, y))
}

/// m(X,Y): the matching number of the bipartite subgraph G[X,Y], ignoring edges inside either side.
pub fn cross_matching_number(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    if !x.is_disjoint(y) {
        return Err(Error::Overlap);
    }
    Ok(matching_core(g, x, y).size())
}

/// Default cap on the number of deletion sets examined by [`is_md_connected`].
pub const DEFAULT_MD_LIMIT: u128 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MdWitness {
    pub removed: VertexSet,
    /// A pair that is disconnected or too far apart after the deletion.
    pub pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MdConnectivity {
    pub connected: bool,
    pub witness: Option<MdWitness>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Whether deleting any at most `m` vertices leaves a connected graph of diameter at most `d`.
pub fn is_md_connected(g: &Graph, m: usize, d: usize, limit: u128) -> Result<MdConnectivity> {
    let n = g.n();
    if m >= n {
        return Err(Error::MTooLarge { m, n });
    }
    let needed: u128 = (0..=m).map(|i| binomial(n, i)).sum();
    if needed > limit {
        return Err(Error::BudgetExceeded { needed, limit });
    }
    let all = full_mask(n);
    for size in 0..=m {
        let mut removed: u64 = if size == 0 { 0 } else { full_mask(size) };
        loop {
            if let Some(pair) = far_pair(g, all & !removed, d) {
                let removed = VertexSet::from_mask(n, removed).expect("subset of V");
                return Ok(MdConnectivity { connected: false, witness: Some(MdWitness { removed, pair }) });
            }
            if size == 0 {
                break;
            }
            // Gosper's hack: next subset of the same size.
            let c = removed & removed.wrapping_neg();
            let r = removed + c;
            let next = (((r ^ removed) >> 2) / c) | r;
            if r == 0 || next & !all != 0 {
                break;
            }
            removed = next;
        }
    }
    Ok(MdConnectivity { connected: true, witness: None })
}

fn far_pair(g: &Graph, alive: u64, d: usize) -> Option<(usize, usize)> {
    for s in Bits(alive) {
        let dist = g.distances(s, alive);
        for t in Bits(alive & !full_mask(s + 1)) {
            if dist[t].is_none_or(|x| x > d) {
                return Some((s, t));
            }
        }
    }
    None
}

/// Greedy vertex-disjoint paths of length at most `d` joining each pair, routed in input order.
///
/// Pair `j` avoids the vertices of earlier paths and the endpoints of later pairs.
pub fn disjoint_paths(g: &Graph, pairs: &[(usize, usize)], m: usize, d: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let n = g.n();
    let mut endpoints = 0u64;
    for &(u, v) in pairs {
        for w in [u, v] {
            if w >= n {
                return Err(Error::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SameVertex);
        }
        for w in [u, v] {
            if endpoints & bit(w) != 0 {
                return Err(Error::PairsOverlap(w));
            }
            endpoints |= bit(w);
        }
    }
    let allowed_pairs = m.div_ceil(d + 1);
    if pairs.len() > allowed_pairs {
        log::warn!("{} pairs exceed ceil(m/(d+1)) = {allowed_pairs}; routing may fail", pairs.len());
    }
    let all = full_mask(n);
    let mut used = 0u64;
    let mut paths = Vec::with_capacity(pairs.len());
    for (j, &(u, v)) in pairs.iter().enumerate() {
        let later = pairs[j + 1..].iter().fold(0u64, |acc, &(a, b)| acc | bit(a) | bit(b));
        let allowed = all & !used & !later;
        match g.shortest_path(u, v, allowed) {
            Some(p) if p.len() - 1 <= d => {
                used |= p.iter().fold(0u64, |acc, &w| acc | bit(w));
                paths.push(p);
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(paths))
}
