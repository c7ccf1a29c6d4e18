//! Is the cycle space spanned by Hamilton cycles? Decision procedure, cheap
//! non-generation certificates, R-subgraph search and parity-switchers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{cycle_space_basis, cycle_space_dim, fundamental_cycles, EdgeVector, Gf2Basis};
use crate::graph::{bit, full_mask, Bits, Graph, VertexSet};
use crate::hamilton::{
    constrained_hamilton_path, edge_on_hamilton_cycle, enumerate_hamilton_cycles, is_hamilton_cycle, is_path,
    HamiltonCycle, SearchBudget, SearchOutcome, Visit,
};

/// Largest order for which partition conditions are checked exhaustively.
pub const MAX_PARTITION_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Generated,
    /// `witness` is a cycle of G (vertex sequence `cycle`) outside the Hamilton span.
    NotGenerated {
        cycle: Vec<usize>,
        witness: EdgeVector,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamGenStatus {
    pub verdict: Verdict,
    pub rank: usize,
    pub dim: usize,
    pub cycles: u64,
    pub nodes: u64,
}

impl HamGenStatus {
    pub fn label(&self) -> &'static str {
        match self.verdict {
            Verdict::Generated => "generated",
            Verdict::NotGenerated { .. } => "not_generated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

struct Span {
    basis: Gf2Basis,
    outcome: SearchOutcome,
    cycles: u64,
    nodes: u64,
}

/// Streams Hamilton cycles into a basis, stopping once it reaches `stop_at` rank.
fn hamilton_span(g: &Graph, budget: SearchBudget, stop_at: Option<usize>) -> Result<Span> {
    let mut basis = Gf2Basis::new(g.m());
    let mut full = stop_at == Some(0);
    let stats = if full {
        None
    } else {
        Some(enumerate_hamilton_cycles(g, budget, |c| {
            basis.insert(&c.to_vector(g)).expect("length matches");
            if stop_at == Some(basis.rank()) {
                full = true;
                Visit::Stop
            } else {
                Visit::Continue
            }
        })?)
    };
    let (outcome, cycles, nodes) = match stats {
        Some(s) => (s.outcome, s.cycles, s.nodes),
        None => (SearchOutcome::Exhausted, 0, 0),
    };
    let outcome = if full { SearchOutcome::Exhausted } else { outcome };
    Ok(Span { basis, outcome, cycles, nodes })
}

/// Decides whether the Hamilton cycles of `g` span its cycle space.
pub fn is_hamilton_generated(g: &Graph, budget: SearchBudget) -> Result<HamGenStatus> {
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    let dim = cycle_space_dim(g);
    let span = hamilton_span(g, budget, Some(dim))?;
    let rank = span.basis.rank();
    let verdict = if rank == dim {
        Verdict::Generated
    } else if span.outcome == SearchOutcome::Capped {
        Verdict::Inconclusive
    } else {
        let cycle = fundamental_cycles(g)
            .into_iter()
            .find(|c| !span.basis.in_span(&EdgeVector::from_cycle(g, c).unwrap()).unwrap())
            .expect("fundamental cycles span the cycle space");
        let witness = EdgeVector::from_cycle(g, &cycle)?;
        assert!(cycle_space_basis(g).in_span(&witness)? && !span.basis.in_span(&witness)?);
        Verdict::NotGenerated { cycle, witness }
    };
    Ok(HamGenStatus { verdict, rank, dim, cycles: span.cycles, nodes: span.nodes })
}

/// A sound reason why the Hamilton cycles cannot span the cycle space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// The edge lies on a cycle of G but on no Hamilton cycle.
    ForbiddenEdge { edge: (usize, usize) },
    /// Every Hamilton cycle meets `set` evenly while `cycle` meets it oddly.
    Parity { set: Vec<(usize, usize)>, cycle: Vec<usize> },
}

fn is_bridge(g: &Graph, u: usize, v: usize) -> bool {
    let h = g.without_edges(&[(u, v)]);
    h.reach(bit(u), full_mask(g.n())) & bit(v) == 0
}

/// Cheap non-generation certificates. An empty list proves nothing.
///
/// Parity certificates need the full Hamilton span, so they are only produced
/// when the enumeration finishes within `budget`.
pub fn non_generation_certificates(g: &Graph, budget: SearchBudget) -> Vec<Certificate> {
    let mut out = Vec::new();
    if g.n() < 3 {
        return out;
    }
    for &(u, v) in g.edges() {
        if !is_bridge(g, u, v) && !edge_on_hamilton_cycle(g, u, v) {
            out.push(Certificate::ForbiddenEdge { edge: (u, v) });
        }
    }
    let Ok(span) = hamilton_span(g, budget, None) else {
        return out;
    };
    if span.outcome != SearchOutcome::Exhausted {
        return out;
    }
    let fundamentals: Vec<(Vec<usize>, EdgeVector)> = fundamental_cycles(g)
        .into_iter()
        .map(|c| {
            let v = EdgeVector::from_cycle(g, &c).unwrap();
            (c, v)
        })
        .collect();
    for s in span.basis.orthogonal_complement().reduced_rows() {
        if let Some((c, _)) = fundamentals.iter().find(|(_, v)| v.parity_with(&s).unwrap()) {
            out.push(Certificate::Parity { set: s.edges(g), cycle: c.clone() });
        }
    }
    out
}

/// Checks a proposed parity certificate: every Hamilton cycle meets `set` evenly
/// and some fundamental cycle meets it oddly. `None` if either part fails or the
/// enumeration is capped.
pub fn check_parity_certificate(
    g: &Graph,
    set: &[(usize, usize)],
    budget: SearchBudget,
) -> Result<Option<Certificate>> {
    let s = EdgeVector::from_edges(g, set)?;
    let mut all_even = true;
    let stats = enumerate_hamilton_cycles(g, budget, |c| {
        if c.to_vector(g).parity_with(&s).unwrap() {
            all_even = false;
            Visit::Stop
        } else {
            Visit::Continue
        }
    })?;
    if !all_even || stats.outcome != SearchOutcome::Exhausted {
        return Ok(None);
    }
    let mut sorted = set.to_vec();
    for e in &mut sorted {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    sorted.sort_unstable();
    Ok(shortest_odd_cycle(g, &s).map(|cycle| Certificate::Parity { set: sorted, cycle }))
}

fn shortest_odd_cycle(g: &Graph, s: &EdgeVector) -> Option<Vec<usize>> {
    (3..=g.n()).find_map(|len| cycle_with_parity(g, s, len, true))
}

/// Outcome of the three R-subgraph properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RChecks {
    /// (a) R is a proper subgraph.
    pub proper: bool,
    /// (b) every Hamilton cycle has an even number of R-edges; `None` if the enumeration was capped.
    pub hamilton_even: Option<bool>,
    /// (c) every partition has `2·e_R(A,B) ≥ e_G(A,B)` and `R ≠ G[A,B]`.
    pub partitions: bool,
}

impl RChecks {
    pub fn all_hold(&self) -> bool {
        self.proper && self.hamilton_even == Some(true) && self.partitions
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSubgraph {
    pub edges: EdgeVector,
    pub checks: RChecks,
    /// Dimension of the space searched (complement of the Hamilton span).
    pub complement_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RSearch {
    Found(RSubgraph),
    /// Every non-zero vector of the complement failed (a) or (c).
    Exhausted {
        complement_dim: usize,
    },
    Inconclusive {
        complement_dim: usize,
        examined: u64,
    },
}

fn adjacency_of(g: &Graph, r: &EdgeVector) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v) in r.edges(g) {
        adj[u] |= bit(v);
        adj[v] |= bit(u);
    }
    adj
}

/// Property (c) over all `2^(n−1)` unordered partitions, walked in Gray-code order.
fn partitions_ok(gadj: &[u64], radj: &[u64]) -> bool {
    let n = gadj.len();
    let m_r: i64 = radj.iter().map(|a| a.count_ones() as i64).sum::<i64>() / 2;
    if m_r == 0 {
        return false;
    }
    for v in 0..n {
        let (dr, dg) = (radj[v].count_ones() as i64, gadj[v].count_ones() as i64);
        if 2 * dr < dg || (dr == m_r && dr == dg) {
            return false;
        }
    }
    if n < 2 {
        return true;
    }
    let (mut a, mut cut_g, mut cut_r) = (0u64, 0i64, 0i64);
    for i in 1u64..(1 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        let (dg, dr) = (gadj[v].count_ones() as i64, radj[v].count_ones() as i64);
        if a & bit(v) == 0 {
            cut_g += dg - 2 * (gadj[v] & a).count_ones() as i64;
            cut_r += dr - 2 * (radj[v] & a).count_ones() as i64;
            a |= bit(v);
        } else {
            a &= !bit(v);
            cut_g += 2 * (gadj[v] & a).count_ones() as i64 - dg;
            cut_r += 2 * (radj[v] & a).count_ones() as i64 - dr;
        }
        if 2 * cut_r < cut_g || (cut_r == m_r && cut_g == cut_r) {
            return false;
        }
    }
    true
}

/// Machine-checks the three R-subgraph properties of `r`.
pub fn check_r(g: &Graph, r: &EdgeVector, budget: SearchBudget) -> Result<RChecks> {
    if r.len() != g.m() {
        return Err(Error::LengthMismatch { expected: g.m(), got: r.len() });
    }
    if g.n() > MAX_PARTITION_ORDER {
        return Err(Error::PartitionTooLarge(g.n()));
    }
    let proper = r.weight() < g.m();
    let mut even = true;
    let stats = enumerate_hamilton_cycles(g, budget, |c| {
        if c.to_vector(g).parity_with(r).unwrap() {
            even = false;
            Visit::Stop
        } else {
            Visit::Continue
        }
    })?;
    let hamilton_even = if !even {
        Some(false)
    } else if stats.outcome == SearchOutcome::Exhausted {
        Some(true)
    } else {
        None
    };
    let partitions = partitions_ok(g.adjacency(), &adjacency_of(g, r));
    Ok(RChecks { proper, hamilton_even, partitions })
}

/// Searches the complement of the Hamilton span for an R-subgraph.
///
/// `budget.max_nodes` caps both the Hamilton enumeration and the number of
/// complement vectors examined.
pub fn find_r(g: &Graph, budget: SearchBudget) -> Result<RSearch> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n > MAX_PARTITION_ORDER {
        return Err(Error::PartitionTooLarge(n));
    }
    let dim = cycle_space_dim(g);
    let span = hamilton_span(g, budget, None)?;
    if span.outcome == SearchOutcome::Capped {
        return Ok(RSearch::Inconclusive { complement_dim: 0, examined: 0 });
    }
    if span.cycles == 0 {
        return Err(Error::NotHamiltonian);
    }
    if span.basis.rank() == dim {
        return Err(Error::AlreadyGenerated);
    }
    let complement = span.basis.orthogonal_complement().reduced_rows();
    let d = complement.len();
    let row_adj: Vec<Vec<u64>> = complement.iter().map(|row| adjacency_of(g, row)).collect();
    let gadj = g.adjacency();
    let mut radj = vec![0u64; n];
    let mut current = EdgeVector::zeros(g.m());
    let mut examined = 0u64;
    let total: u128 = (1u128 << d) - 1;
    let mut i: u128 = 1;
    while i <= total {
        if budget.max_nodes.is_some_and(|cap| examined >= cap) {
            return Ok(RSearch::Inconclusive { complement_dim: d, examined });
        }
        let flip = i.trailing_zeros() as usize;
        current ^= &complement[flip];
        for (acc, x) in radj.iter_mut().zip(&row_adj[flip]) {
            *acc ^= x;
        }
        examined += 1;
        if current.weight() < g.m() && partitions_ok(gadj, &radj) {
            let checks = check_r(g, &current, SearchBudget::unlimited())?;
            debug_assert!(checks.all_hold());
            return Ok(RSearch::Found(RSubgraph { edges: current, checks, complement_dim: d }));
        }
        i += 1;
    }
    Ok(RSearch::Exhausted { complement_dim: d })
}

/// Depth-first search for a cycle of exactly `len` vertices whose R-parity is `odd`.
/// Roots are tried in increasing order and each cycle uses only vertices above its root.
fn cycle_with_parity(g: &Graph, r: &EdgeVector, len: usize, odd: bool) -> Option<Vec<usize>> {
    fn dfs(
        g: &Graph,
        r: &EdgeVector,
        len: usize,
        odd: bool,
        allowed: u64,
        path: &mut Vec<usize>,
        parity: bool,
    ) -> bool {
        let cur = *path.last().unwrap();
        let root = path[0];
        if path.len() == len {
            let closing = g.edge_id(cur, root).map(|id| r.get(id));
            return closing.is_some_and(|c| (parity ^ c) == odd) && path[1] < cur;
        }
        for w in Bits(g.adj_mask(cur) & allowed) {
            path.push(w);
            let p = parity ^ r.get(g.edge_id(cur, w).unwrap());
            if dfs(g, r, len, odd, allowed & !bit(w), path, p) {
                return true;
            }
            path.pop();
        }
        false
    }
    let n = g.n();
    for root in 0..n {
        let allowed = full_mask(n) & !full_mask(root + 1);
        let mut path = vec![root];
        if dfs(g, r, len, odd, allowed, &mut path, false) {
            return Some(path);
        }
    }
    None
}

/// Shortest even cycle of length at most `max_len` with an odd number of R-edges.
pub fn find_odd_r_cycle(g: &Graph, r: &EdgeVector, max_len: usize) -> Result<Option<Vec<usize>>> {
    if max_len < 4 || max_len % 2 == 1 {
        return Err(Error::BadLength(max_len));
    }
    if r.len() != g.m() {
        return Err(Error::LengthMismatch { expected: g.m(), got: r.len() });
    }
    Ok((4..=max_len.min(g.n())).step_by(2).find_map(|len| cycle_with_parity(g, r, len, true)))
}

/// An even cycle `v_1 … v_2k` with an odd number of R-edges, plus rungs
/// `P_2 … P_k` (`P_i` from `v_i` to `v_(2k−i+2)`) and tails `P_1` (from `v_1`)
/// and `P_(k+1)` (from `v_(k+1)`) ending at the touch vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySwitcher {
    cycle: Vec<usize>,
    paths: Vec<Vec<usize>>,
}

impl ParitySwitcher {
    pub fn new(g: &Graph, r: &EdgeVector, cycle: Vec<usize>, paths: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::BadSwitcher(msg.to_string()));
        let len = cycle.len();
        if len < 4 || len % 2 == 1 {
            return bad("cycle length must be even and at least 4");
        }
        if !is_path(g, &cycle) || !g.has_edge(cycle[len - 1], cycle[0]) {
            return bad("cycle is not a cycle of the graph");
        }
        if !EdgeVector::from_cycle(g, &cycle)?.parity_with(r)? {
            return bad("cycle has an even number of R-edges");
        }
        let k = len / 2;
        if paths.len() != k + 1 {
            return bad("expected k + 1 paths");
        }
        let mut seen = 0u64;
        for (i, p) in paths.iter().enumerate() {
            if p.is_empty() || !is_path(g, p) {
                return bad("path is not a path of the graph");
            }
            let mask = p.iter().fold(0u64, |acc, &v| acc | bit(v));
            if mask & seen != 0 {
                return bad("paths are not vertex-disjoint");
            }
            seen |= mask;
            let idx = i + 1;
            let on_cycle: Vec<usize> = p.iter().copied().filter(|v| cycle.contains(v)).collect();
            let expected = match idx {
                1 => vec![cycle[0]],
                _ if idx == k + 1 => vec![cycle[k]],
                _ => vec![cycle[idx - 1], cycle[2 * k - idx + 1]],
            };
            if p[0] != expected[0] || on_cycle != expected || (expected.len() == 2 && p[p.len() - 1] != expected[1]) {
                return bad("path endpoints do not follow the switcher pattern");
            }
        }
        Ok(ParitySwitcher { cycle, paths })
    }

    pub fn k(&self) -> usize {
        self.cycle.len() / 2
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// Touch vertices `(u_1, u_(k+1))`.
    pub fn touch_vertices(&self) -> (usize, usize) {
        let (p1, pk) = (&self.paths[0], &self.paths[self.k()]);
        (p1[p1.len() - 1], pk[pk.len() - 1])
    }

    /// Vertices not covered by any path: the required interior of a closing path.
    pub fn uncovered(&self, n: usize) -> VertexSet {
        let mask = self.paths.iter().flatten().fold(0u64, |acc, &v| acc | bit(v));
        VertexSet::from_mask(n, full_mask(n) & !mask).expect("subset of V")
    }
}

/// Builds a switcher on `cycle` with shortest rungs and single-vertex tails.
pub fn switcher_from_cycle(g: &Graph, r: &EdgeVector, cycle: &[usize]) -> Option<ParitySwitcher> {
    let len = cycle.len();
    if len < 4 || len % 2 == 1 {
        return None;
    }
    let k = len / 2;
    let on_cycle = cycle.iter().fold(0u64, |acc, &v| acc | bit(v));
    let mut used = 0u64;
    let mut paths = vec![vec![cycle[0]]];
    for i in 2..=k {
        let (a, b) = (cycle[i - 1], cycle[2 * k - i + 1]);
        let allowed = (full_mask(g.n()) & !on_cycle & !used) | bit(a) | bit(b);
        let p = g.shortest_path(a, b, allowed)?;
        used |= p.iter().fold(0u64, |acc, &v| acc | bit(v));
        paths.push(p);
    }
    paths.push(vec![cycle[k]]);
    ParitySwitcher::new(g, r, cycle.to_vec(), paths).ok()
}

/// The two Hamilton cycles obtained by closing `w` with the path `p` between its touch vertices.
pub fn assemble_switch_cycles(g: &Graph, w: &ParitySwitcher, p: &[usize]) -> Result<(HamiltonCycle, HamiltonCycle)> {
    let (u1, uk) = w.touch_vertices();
    if p.len() < 2 || !is_path(g, p) {
        return Err(Error::BadPath("not a path of the graph".into()));
    }
    let mut closing = p.to_vec();
    if closing[0] == u1 && closing[closing.len() - 1] == uk {
        closing.reverse();
    }
    if closing[0] != uk || closing[closing.len() - 1] != u1 {
        return Err(Error::BadPath("endpoints are not the touch vertices".into()));
    }
    let inner = closing[1..closing.len() - 1].iter().fold(0u64, |acc, &v| acc | bit(v));
    if inner != w.uncovered(g.n()).mask() {
        return Err(Error::BadPath("interior is not the set of uncovered vertices".into()));
    }
    let c1 = switch_cycle(w, &closing, true);
    let c2 = switch_cycle(w, &closing, false);
    for c in [&c1, &c2] {
        if !is_hamilton_cycle(g, c) {
            return Err(Error::BadPath("assembled walk is not a Hamilton cycle".into()));
        }
    }
    let (c1, c2) = (HamiltonCycle::from_order(&c1), HamiltonCycle::from_order(&c2));
    debug_assert_eq!(&c1.to_vector(g) ^ &c2.to_vector(g), EdgeVector::from_cycle(g, w.cycle()).unwrap());
    Ok((c1, c2))
}

/// Walks the rungs, taking the top gap edge on odd gaps when `odd_top`
/// (bottom otherwise), then closes through `P_(k+1)`, the closing path and `P_1`.
fn switch_cycle(w: &ParitySwitcher, closing: &[usize], odd_top: bool) -> Vec<usize> {
    let k = w.k();
    let cyc = w.cycle();
    let top = |i: usize| cyc[i - 1];
    let bottom = |i: usize| {
        if i == 1 {
            cyc[0]
        } else if i == k + 1 {
            cyc[k]
        } else {
            cyc[2 * k - i + 1]
        }
    };
    let mut walk = vec![cyc[0]];
    for gap in 1..=k {
        let use_top = (gap % 2 == 1) == odd_top;
        let next = gap + 1;
        let entry = if use_top { top(next) } else { bottom(next) };
        walk.push(entry);
        if next <= k {
            let rung = &w.paths()[next - 1];
            if entry == rung[0] {
                walk.extend(&rung[1..]);
            } else {
                walk.extend(rung.iter().rev().skip(1));
            }
        }
    }
    walk.extend(&w.paths()[k][1..]);
    walk.extend(&closing[1..]);
    walk.extend(w.paths()[0].iter().rev().skip(1));
    walk.dedup();
    if walk.len() > 1 && walk[walk.len() - 1] == walk[0] {
        walk.pop();
    }
    walk
}

/// True iff no path joins the touch vertices through exactly the uncovered vertices.
pub fn switcher_obstruction_holds(g: &Graph, r: &EdgeVector, w: &ParitySwitcher) -> Result<bool> {
    let w = ParitySwitcher::new(g, r, w.cycle.clone(), w.paths.clone())?;
    let (u1, uk) = w.touch_vertices();
    Ok(constrained_hamilton_path(g, u1, uk, &w.uncovered(g.n()))?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn small_verdicts() {
        let c5 = is_hamilton_generated(&cycle_graph(5).unwrap(), SearchBudget::unlimited()).unwrap();
        assert_eq!((c5.verdict.clone(), c5.rank, c5.dim), (Verdict::Generated, 1, 1));
        let k4 = complete_graph(4).unwrap();
        let s = is_hamilton_generated(&k4, SearchBudget::unlimited()).unwrap();
        match s.verdict {
            Verdict::NotGenerated { cycle, witness } => {
                assert_eq!(cycle.len(), 3);
                assert_eq!(witness.weight(), 3);
            }
            other => panic!("{other:?}"),
        }
        let k5 = is_hamilton_generated(&complete_graph(5).unwrap(), SearchBudget::unlimited()).unwrap();
        assert_eq!((k5.verdict, k5.rank, k5.dim), (Verdict::Generated, 6, 6));
        let capped = is_hamilton_generated(&complete_graph(7).unwrap(), SearchBudget::nodes(3)).unwrap();
        assert_eq!(capped.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn k5_has_no_certificates() {
        assert!(non_generation_certificates(&complete_graph(5).unwrap(), SearchBudget::unlimited()).is_empty());
    }

    #[test]
    fn find_r_rejections() {
        assert_eq!(find_r(&complete_graph(4).unwrap(), SearchBudget::unlimited()), Err(Error::EvenOrder(4)));
        assert_eq!(find_r(&cycle_graph(5).unwrap(), SearchBudget::unlimited()), Err(Error::AlreadyGenerated));
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]).unwrap();
        assert_eq!(find_r(&star, SearchBudget::unlimited()), Err(Error::NotHamiltonian));
    }

    #[test]
    fn odd_r_cycles() {
        let k4 = complete_graph(4).unwrap();
        let r = EdgeVector::from_edges(&k4, &[(0, 1)]).unwrap();
        let c = find_odd_r_cycle(&k4, &r, 4).unwrap().unwrap();
        assert_eq!(c.len(), 4);
        assert!(EdgeVector::from_cycle(&k4, &c).unwrap().parity_with(&r).unwrap());
        assert_eq!(find_odd_r_cycle(&k4, &EdgeVector::zeros(6), 4).unwrap(), None);
        assert_eq!(find_odd_r_cycle(&k4, &r, 5), Err(Error::BadLength(5)));
    }

    /// Ladder on 8 vertices: 4-cycle 0-1-2-3, rung 1–3 via 5, tails 0–4 and 2–6, closing path 6-7-4.
    fn ladder() -> (Graph, EdgeVector, ParitySwitcher) {
        let g =
            Graph::new(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 5), (5, 3), (0, 4), (2, 6), (6, 7), (7, 4)]).unwrap();
        let r = EdgeVector::from_edges(&g, &[(0, 1)]).unwrap();
        let w = ParitySwitcher::new(&g, &r, vec![0, 1, 2, 3], vec![vec![0, 4], vec![1, 5, 3], vec![2, 6]]).unwrap();
        (g, r, w)
    }

    #[test]
    fn switch_cycles_xor_to_the_cycle() {
        let (g, r, w) = ladder();
        assert_eq!(w.touch_vertices(), (4, 6));
        let (c1, c2) = assemble_switch_cycles(&g, &w, &[4, 7, 6]).unwrap();
        assert_eq!(&c1.to_vector(&g) ^ &c2.to_vector(&g), EdgeVector::from_cycle(&g, &[0, 1, 2, 3]).unwrap());
        assert!(c1.to_vector(&g).parity_with(&r).unwrap() ^ c2.to_vector(&g).parity_with(&r).unwrap());
        assert!(matches!(assemble_switch_cycles(&g, &w, &[4, 0]), Err(Error::BadPath(_))));
        assert!(!switcher_obstruction_holds(&g, &r, &w).unwrap());
    }

    #[test]
    fn switcher_validation() {
        let (g, r, _) = ladder();
        assert!(matches!(
            ParitySwitcher::new(&g, &EdgeVector::zeros(g.m()), vec![0, 1, 2, 3], vec![vec![0], vec![1, 5, 3], vec![2]]),
            Err(Error::BadSwitcher(_))
        ));
        assert!(matches!(
            ParitySwitcher::new(&g, &r, vec![0, 1, 2, 3], vec![vec![0], vec![1, 0, 3], vec![2]]),
            Err(Error::BadSwitcher(_))
        ));
        let w = switcher_from_cycle(&g, &r, &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.paths(), &[vec![0], vec![1, 5, 3], vec![2]]);
    }
}
