//! Exhaustive and constrained Hamilton cycle / path search.
//!
//! Everything here runs on one backtracking engine. It extends a path from
//! vertex 0, trying the lowest-index neighbour first, and prunes a branch as
//! soon as the unvisited vertices stop being connected or one of them has
//! fewer than two usable neighbours left. Forced edges (a linear forest, a
//! matching, or a single edge standing in for a Hamilton path) are handled by
//! degree propagation: a vertex with two forced edges takes no other edge, and
//! a vertex with one pending forced edge must leave along it.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::EdgeVector;
use crate::graph::{bit, full_mask, Bits, Graph, VertexSet};
use crate::structures::LinearForest;

pub type Rational = Ratio<i64>;

/// Environment variable that overrides the default node budget.
pub const BUDGET_ENV: &str = "HAMGEN_BUDGET_NODES";

/// Optional caps on a search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_cycles: Option<u64>,
    pub max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_cycles: None, max_nodes: Some(max_nodes.max(1)) }
    }

    pub fn cycles(max_cycles: u64) -> Self {
        SearchBudget { max_cycles: Some(max_cycles.max(1)), max_nodes: None }
    }

    /// Node budget from `HAMGEN_BUDGET_NODES`, falling back to `default_nodes`.
    pub fn from_env(default_nodes: Option<u64>) -> Self {
        let env = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse::<u64>().ok());
        SearchBudget { max_cycles: None, max_nodes: env.or(default_nodes).map(|v| v.max(1)) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    /// The whole search tree was explored.
    Exhausted,
    /// A budget tripped or the visitor stopped early; results are inconclusive.
    Capped,
}

/// Visitor verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub outcome: SearchOutcome,
    pub cycles: u64,
    pub nodes: u64,
}

/// A Hamilton cycle in canonical form: it starts at vertex 0 and its second
/// vertex is the smaller of 0's two cycle neighbours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HamiltonCycle {
    order: Vec<usize>,
}

impl HamiltonCycle {
    /// Canonicalises a cyclic vertex sequence. The caller guarantees it is a permutation of `0..n`.
    pub fn from_order(order: &[usize]) -> Self {
        let n = order.len();
        let zero = order.iter().position(|&v| v == 0).expect("cycle visits vertex 0");
        let mut out: Vec<usize> = (0..n).map(|i| order[(zero + i) % n]).collect();
        if n > 2 && out[1] > out[n - 1] {
            out[1..].reverse();
        }
        HamiltonCycle { order: out }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.order[i], self.order[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let n = self.order.len();
        (0..n).any(|i| {
            let (a, b) = (self.order[i], self.order[(i + 1) % n]);
            (a == u && b == v) || (a == v && b == u)
        })
    }

    pub fn to_vector(&self, g: &Graph) -> EdgeVector {
        EdgeVector::from_cycle(g, &self.order).expect("cycle edges belong to the graph")
    }

    /// Checks the cycle against `g`: all vertices once, consecutive vertices adjacent.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        is_hamilton_cycle(g, &self.order)
    }
}

impl fmt::Debug for HamiltonCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HamiltonCycle{:?}", self.order)
    }
}

/// Whether `order` lists every vertex of `g` once with consecutive (and last→first) vertices adjacent.
pub fn is_hamilton_cycle(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n || n < 3 {
        return false;
    }
    let mut seen = 0u64;
    for &v in order {
        if v >= n || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    (0..n).all(|i| g.has_edge(order[i], order[(i + 1) % n]))
}

/// Whether `path` is a path of `g` (distinct vertices, consecutive ones adjacent).
pub fn is_path(g: &Graph, path: &[usize]) -> bool {
    let mut seen = 0u64;
    for &v in path {
        if v >= g.n() || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

struct Engine<'a> {
    n: usize,
    adj: &'a [u64],
    forced: Vec<u64>,
    all: u64,
    path: Vec<usize>,
    nodes: u64,
    cycles: u64,
    budget: SearchBudget,
    dedupe: bool,
    stopped: bool,
    capped: bool,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, forced: Vec<u64>, budget: SearchBudget, dedupe: bool) -> Self {
        Engine {
            n: g.n(),
            adj: g.adjacency(),
            forced,
            all: full_mask(g.n()),
            path: Vec::with_capacity(g.n()),
            nodes: 0,
            cycles: 0,
            budget,
            dedupe,
            stopped: false,
            capped: false,
        }
    }

    fn run(mut self, visit: &mut dyn FnMut(&[usize]) -> Visit) -> SearchStats {
        // A vertex with three forced edges, or a forced edge missing from the graph, kills everything.
        let consistent = (0..self.n).all(|v| self.forced[v].count_ones() <= 2 && self.forced[v] & !self.adj[v] == 0);
        if consistent && self.n >= 3 {
            self.path.push(0);
            self.extend(bit(0), visit);
        }
        SearchStats {
            outcome: if self.capped { SearchOutcome::Capped } else { SearchOutcome::Exhausted },
            cycles: self.cycles,
            nodes: self.nodes,
        }
    }

    fn extend(&mut self, visited: u64, visit: &mut dyn FnMut(&[usize]) -> Visit) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|cap| self.nodes > cap) {
            self.stopped = true;
            self.capped = true;
            return;
        }
        let depth = self.path.len();
        let cur = self.path[depth - 1];
        let start = self.path[0];

        if depth == self.n {
            self.close(cur, visit);
            return;
        }

        let unvisited = self.all & !visited;
        let mut cand = if depth == 1 {
            let mut c = self.adj[start] & unvisited;
            if self.forced[start].count_ones() == 2 {
                c &= self.forced[start];
            }
            c
        } else {
            let pred = self.path[depth - 2];
            let need = self.forced[cur] & !bit(pred);
            match need.count_ones() {
                0 => self.adj[cur] & unvisited,
                1 => need & unvisited,
                _ => return,
            }
        };

        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if self.admissible(w, cur, depth, visited) {
                self.path.push(w);
                self.extend(visited | bit(w), visit);
                self.path.pop();
                if self.stopped {
                    return;
                }
            }
        }
    }

    /// Checks whether stepping `cur → w` can still lead to a Hamilton cycle.
    fn admissible(&self, w: usize, cur: usize, depth: usize, visited: u64) -> bool {
        let start = self.path[0];
        let last = depth + 1 == self.n;
        let other_forced = self.forced[w] & !bit(cur);
        if other_forced.count_ones() > 1 {
            return false;
        }
        if other_forced & visited != 0 && !(last && other_forced == bit(start)) {
            return false;
        }
        // A forced partner of the start vertex other than its first successor must be the last vertex.
        if depth >= 2 && self.forced[start] & bit(w) != 0 && !last {
            return false;
        }
        let rem = self.all & !visited & !bit(w);
        if rem == 0 {
            return self.adj[w] & bit(start) != 0;
        }
        if self.dedupe && depth == 1 {
            // Canonical orientation: the closing vertex must exceed the second vertex.
            let above = !full_mask(w + 1);
            if self.adj[start] & rem & above == 0 {
                return false;
            }
        }
        if self.adj[w] & rem == 0 || self.adj[start] & rem == 0 {
            return false;
        }
        let ends = bit(w) | bit(start);
        for r in Bits(rem) {
            if (self.adj[r] & (rem | ends)).count_ones() < 2 {
                return false;
            }
        }
        let low = rem & rem.wrapping_neg();
        reach(self.adj, low, rem) == rem
    }

    fn close(&mut self, cur: usize, visit: &mut dyn FnMut(&[usize]) -> Visit) {
        let start = self.path[0];
        if self.adj[cur] & bit(start) == 0 {
            return;
        }
        let pred = self.path[self.n - 2];
        let first = self.path[1];
        if self.forced[start] & !(bit(first) | bit(cur)) != 0 || self.forced[cur] & !(bit(pred) | bit(start)) != 0 {
            return;
        }
        if self.dedupe && first > cur {
            return;
        }
        self.cycles += 1;
        if visit(&self.path) == Visit::Stop || self.budget.max_cycles.is_some_and(|cap| self.cycles >= cap) {
            self.stopped = true;
            self.capped = true;
        }
    }
}

fn reach(adj: &[u64], start: u64, allowed: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0u64;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

fn forced_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    let mut forced = vec![0u64; n];
    for &(u, v) in edges {
        forced[u] |= bit(v);
        forced[v] |= bit(u);
    }
    forced
}

/// Streams every Hamilton cycle of `g` to `visitor`, each once and in canonical form.
///
/// Returns [`SearchOutcome::Exhausted`] only if the search tree was fully explored.
pub fn enumerate_hamilton_cycles<F>(g: &Graph, budget: SearchBudget, mut visitor: F) -> Result<SearchStats>
where
    F: FnMut(&HamiltonCycle) -> Visit,
{
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    let engine = Engine::new(g, vec![0; g.n()], budget, true);
    Ok(engine.run(&mut |path| visitor(&HamiltonCycle { order: path.to_vec() })))
}

/// Collects all Hamilton cycles (unlimited budget).
pub fn all_hamilton_cycles(g: &Graph) -> Result<Vec<HamiltonCycle>> {
    let mut out = Vec::new();
    enumerate_hamilton_cycles(g, SearchBudget::unlimited(), |c| {
        out.push(c.clone());
        Visit::Continue
    })?;
    Ok(out)
}

fn first_cycle_with_forced(g: &Graph, forced_edges: &[(usize, usize)]) -> Option<HamiltonCycle> {
    let engine = Engine::new(g, forced_from_edges(g.n(), forced_edges), SearchBudget::unlimited(), false);
    let mut found = None;
    engine.run(&mut |path| {
        found = Some(HamiltonCycle::from_order(path));
        Visit::Stop
    });
    found
}

/// A Hamilton cycle of `g` containing every edge of `forest`, or `None` if there is none.
pub fn hamilton_cycle_through(g: &Graph, forest: &LinearForest) -> Result<Option<HamiltonCycle>> {
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    let edges = forest.edges();
    for &(u, v) in &edges {
        if !g.has_edge(u, v) {
            return Err(Error::NotUdp(format!("edge ({u}, {v}) is not in the graph")));
        }
    }
    Ok(first_cycle_with_forced(g, &edges))
}

/// Whether some Hamilton cycle of `g` uses edge `uv`.
pub fn edge_on_hamilton_cycle(g: &Graph, u: usize, v: usize) -> bool {
    g.n() >= 3 && g.has_edge(u, v) && first_cycle_with_forced(g, &[(u, v)]).is_some()
}

/// A Hamilton path of `g` from `u` to `v`, or `None` if there is none.
pub fn hamilton_path_between(g: &Graph, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    for w in [u, v] {
        if w >= n {
            return Err(Error::OutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::SameVertex);
    }
    if n == 2 {
        return Ok(g.has_edge(u, v).then(|| vec![u, v]));
    }
    // A u–v Hamilton path is a Hamilton cycle of G + uv through uv, minus that edge.
    let h = g.with_edges(&[(u, v)])?;
    let Some(cycle) = first_cycle_with_forced(&h, &[(u, v)]) else {
        return Ok(None);
    };
    let order = cycle.order();
    let iu = order.iter().position(|&w| w == u).unwrap();
    let forward = order[(iu + 1) % n] == v;
    let path: Vec<usize> = if forward {
        (0..n).map(|i| order[(iu + n - i) % n]).collect()
    } else {
        (0..n).map(|i| order[(iu + i) % n]).collect()
    };
    debug_assert_eq!(path.last(), Some(&v));
    Ok(Some(path))
}

/// Outcome of [`is_hamilton_connected`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonConnectivity {
    pub connected: bool,
    /// Lexicographically first pair without a Hamilton path.
    pub failing_pair: Option<(usize, usize)>,
}

pub fn is_hamilton_connected(g: &Graph) -> HamiltonConnectivity {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let ok = hamilton_path_between(g, u, v).expect("valid pair").is_some();
            if !ok {
                return HamiltonConnectivity { connected: false, failing_pair: Some((u, v)) };
            }
        }
    }
    HamiltonConnectivity { connected: true, failing_pair: None }
}

/// A `u`–`v` path whose interior vertex set is exactly `interior`.
pub fn constrained_hamilton_path(g: &Graph, u: usize, v: usize, interior: &VertexSet) -> Result<Option<Vec<usize>>> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::OutOfRange { vertex: w, n: g.n() });
        }
        if interior.contains(w) {
            return Err(Error::EndpointInInterior(w));
        }
    }
    if u == v {
        return Err(Error::SameVertex);
    }
    let mut span = *interior;
    span.insert(u);
    span.insert(v);
    let sub = g.induced(&span);
    let su = sub.original.iter().position(|&w| w == u).unwrap();
    let sv = sub.original.iter().position(|&w| w == v).unwrap();
    Ok(hamilton_path_between(&sub.graph, su, sv)?.map(|p| sub.lift_path(&p)))
}

/// Pósa's sufficient condition `δ ≥ (n + k)/2` for a Hamilton cycle through any `k`-edge linear forest.
pub fn posa_guarantees(n: usize, k: usize, min_degree: usize) -> Result<bool> {
    if k <= 1 {
        return Err(Error::KTooSmall(k));
    }
    Ok(2 * min_degree >= n + k)
}

/// `σ₁,₁` of a bipartite graph: the least degree sum over non-adjacent cross pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sigma {
    Finite(usize),
    Infinite,
}

impl Sigma {
    pub fn at_least(&self, threshold: Rational) -> bool {
        match self {
            Sigma::Infinite => true,
            Sigma::Finite(s) => Rational::from_integer(*s as i64) >= threshold,
        }
    }
}

impl PartialOrd for Sigma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sigma {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Sigma::Infinite, Sigma::Infinite) => Ordering::Equal,
            (Sigma::Infinite, _) => Ordering::Greater,
            (_, Sigma::Infinite) => Ordering::Less,
            (Sigma::Finite(a), Sigma::Finite(b)) => a.cmp(b),
        }
    }
}

fn check_bipartition(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<()> {
    if !x.is_disjoint(y) || x.union(y) != g.vertices() {
        return Err(Error::BadPartition("X and Y must partition V(G)".into()));
    }
    for &(u, v) in g.edges() {
        if x.contains(u) == x.contains(v) {
            return Err(Error::BadPartition(format!("edge ({u}, {v}) lies inside one side")));
        }
    }
    Ok(())
}

pub fn sigma11(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<Sigma> {
    check_bipartition(g, x, y)?;
    let mut best = Sigma::Infinite;
    for a in x.iter() {
        for b in Bits(y.mask() & !g.adj_mask(a)) {
            best = best.min(Sigma::Finite(g.degree(a) + g.degree(b)));
        }
    }
    Ok(best)
}

/// Degree-sum threshold for a Hamilton cycle through a `k`-matching of a balanced bipartite graph
/// with `n` vertices per side. The three ranges are tried in order; the first match wins.
pub fn fuji_threshold(n: usize, k: usize) -> Result<Rational> {
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let (n_, k_) = (n as i64, k as i64);
    if k == n || k + 1 == n || k <= 4 {
        return Ok(Rational::from_integer(n_ + 2));
    }
    // 2n/3 ≤ k ≤ n − 2
    if 3 * k_ >= 2 * n_ && k + 2 <= n {
        return Ok(Rational::from_integer(2 * n_ - k_));
    }
    // 5 ≤ k ≤ (2n − 1)/3
    if k >= 5 && 3 * k_ < 2 * n_ {
        return Ok(Rational::new(2 * n_ + k_, 2));
    }
    unreachable!("the three ranges cover 1..=n")
}

/// A Hamilton cycle of the balanced bipartite graph `g` that contains every edge of `matching`.
pub fn hamilton_m_cycle(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    matching: &[(usize, usize)],
) -> Result<Option<HamiltonCycle>> {
    check_bipartition(g, x, y)?;
    if x.len() != y.len() {
        return Err(Error::NotBalanced(x.len(), y.len()));
    }
    let mut used = 0u64;
    for &(u, v) in matching {
        if !g.has_edge(u, v) {
            return Err(Error::NotMatching(format!("({u}, {v}) is not an edge")));
        }
        if used & (bit(u) | bit(v)) != 0 {
            return Err(Error::NotMatching(format!("edges share a vertex at ({u}, {v})")));
        }
        used |= bit(u) | bit(v);
    }
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    Ok(first_cycle_with_forced(g, matching))
}
