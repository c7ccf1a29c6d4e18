//! The three extremal graphs on `4k + 1` vertices and a seeded sampler of
//! Hamilton-connected graphs at the Dirac threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::EdgeVector;
use crate::graph::{Graph, VertexSet};
use crate::hamgen::ParitySwitcher;
use crate::hamilton::is_hamilton_connected;

pub use crate::graph::complete_graph;

/// Identifier of the generator behind every seeded draw.
pub const RNG_NAME: &str = "chacha8";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Complete bipartite between the sides, plus `a1a2` and `b1b2`.
    G1,
    /// Two cliques `X ∪ {b1}` and `Y ∪ {a1}` minus `a1b1`.
    G2,
    /// Cliques on both sides, plus `a1b1`, `a2b2`, `a3b3`.
    G3,
}

impl Variant {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Variant::G1),
            2 => Some(Variant::G2),
            3 => Some(Variant::G3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledConstruction {
    pub graph: Graph,
    pub k: usize,
    pub x: VertexSet,
    pub y: VertexSet,
}

impl LabeledConstruction {
    /// `a_i = i − 1`, for `1 ≤ i ≤ 2k + 1`.
    pub fn a(&self, i: usize) -> usize {
        i - 1
    }

    /// `b_i = 2k + i`, for `1 ≤ i ≤ 2k`.
    pub fn b(&self, i: usize) -> usize {
        2 * self.k + i
    }
}

/// Builds the requested variant with `X = {0..2k}` and `Y = {2k+1..4k}`.
pub fn construction_a(k: usize, variant: Variant) -> Result<LabeledConstruction> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let n = 4 * k + 1;
    let x = VertexSet::range(n, 0, 2 * k + 1);
    let y = VertexSet::range(n, 2 * k + 1, n);
    let (a1, a2, a3) = (0, 1, 2);
    let (b1, b2, b3) = (2 * k + 1, 2 * k + 2, 2 * k + 3);
    let pairs = |s: VertexSet| {
        let vs = s.to_vec();
        let mut out = Vec::new();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                out.push((u, v));
            }
        }
        out
    };
    let mut edges: Vec<(usize, usize)> = match variant {
        Variant::G1 => {
            let mut e: Vec<_> = x.iter().flat_map(|u| y.iter().map(move |v| (u, v))).collect();
            e.extend([(a1, a2), (b1, b2)]);
            e
        }
        Variant::G2 => {
            let mut left = x;
            left.insert(b1);
            let mut right = y;
            right.insert(a1);
            let mut e = pairs(left);
            e.extend(pairs(right));
            e.retain(|&(u, v)| (u.min(v), u.max(v)) != (a1, b1));
            e
        }
        Variant::G3 => {
            let mut e = pairs(x);
            e.extend(pairs(y));
            e.extend([(a1, b1), (a2, b2), (a3, b3)]);
            e
        }
    };
    edges.sort_unstable();
    edges.dedup();
    Ok(LabeledConstruction { graph: Graph::new(n, &edges)?, k, x, y })
}

/// Rejection-samples `G(n, p)` until the draw has minimum degree at least
/// `(n − 1)/2` and is Hamilton-connected. `None` after `attempts` draws.
pub fn random_dirac_hc_graph(n: usize, seed: u64, attempts: u32, p: f64) -> Result<Option<Graph>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n < 5 {
        return Err(Error::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p.clamp(0.0, 1.0);
    for _ in 0..attempts {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges)?;
        if 2 * g.min_degree() >= n - 1 && is_hamilton_connected(&g).connected {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// A parity-switcher together with an R-subgraph and a closing path, on fresh vertices.
#[derive(Clone, Debug)]
pub struct SwitcherInstance {
    pub graph: Graph,
    pub r: EdgeVector,
    pub switcher: ParitySwitcher,
    pub closing: Vec<usize>,
}

/// Seeded switcher on a `2k`-cycle: rungs, tails and closing path get random
/// lengths, a few random chords are added, and R is a random edge set with an
/// odd number of cycle edges.
pub fn random_switcher_instance(k: usize, seed: u64) -> Result<SwitcherInstance> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 2 * k;
    let cycle: Vec<usize> = (0..len).collect();
    let mut next = len;
    let mut fresh = |count: usize| {
        let out: Vec<usize> = (next..next + count).collect();
        next += count;
        out
    };
    let mut paths = Vec::with_capacity(k + 1);
    let tail = fresh(rng.gen_range(0..=2));
    paths.push(std::iter::once(cycle[0]).chain(tail).collect::<Vec<_>>());
    for i in 2..=k {
        let inner = fresh(rng.gen_range(0..=2));
        let mut p = vec![cycle[i - 1]];
        p.extend(inner);
        p.push(cycle[2 * k - i + 1]);
        paths.push(p);
    }
    let tail = fresh(rng.gen_range(0..=2));
    paths.push(std::iter::once(cycle[k]).chain(tail).collect::<Vec<_>>());
    let (u1, uk) = (*paths[0].last().unwrap(), *paths[k].last().unwrap());
    let mut closing = vec![uk];
    closing.extend(fresh(rng.gen_range(0..=3)));
    closing.push(u1);
    let n = next;
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: crate::graph::MAX_VERTICES });
    }
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (cycle[i], cycle[(i + 1) % len])).collect();
    for p in paths.iter().chain(std::iter::once(&closing)) {
        edges.extend(p.windows(2).map(|w| (w[0], w[1])));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::new(n, &edges)?;
    let mut r = EdgeVector::from_indices(graph.m(), (0..graph.m()).filter(|_| rng.gen_bool(0.5)));
    let c = EdgeVector::from_cycle(&graph, &cycle)?;
    if !r.parity_with(&c)? {
        r.flip(graph.edge_id(cycle[0], cycle[1]).expect("cycle edge"));
    }
    let switcher = ParitySwitcher::new(&graph, &r, cycle, paths)?;
    Ok(SwitcherInstance { graph, r, switcher, closing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_sizes() {
        let g1 = construction_a(2, Variant::G1).unwrap();
        assert_eq!((g1.graph.n(), g1.graph.min_degree()), (9, 4));
        assert_eq!((g1.x.len(), g1.y.len()), (5, 4));
        assert_eq!(construction_a(2, Variant::G2).unwrap().graph.min_degree(), 4);
        assert_eq!(construction_a(2, Variant::G3).unwrap().graph.min_degree(), 3);
        assert_eq!(construction_a(1, Variant::G1), Err(Error::KTooSmall(1)));
    }

    /// Edge membership straight from the three definitions.
    fn predicate(k: usize, v: Variant, u: usize, w: usize) -> bool {
        let in_x = |t: usize| t <= 2 * k;
        let (a1, a2, a3, b1, b2, b3) = (0, 1, 2, 2 * k + 1, 2 * k + 2, 2 * k + 3);
        let is = |p: usize, q: usize| (u == p && w == q) || (u == q && w == p);
        match v {
            Variant::G1 => in_x(u) != in_x(w) || is(a1, a2) || is(b1, b2),
            Variant::G2 => {
                let left = |t: usize| in_x(t) || t == b1;
                let right = |t: usize| !in_x(t) || t == a1;
                !is(a1, b1) && ((left(u) && left(w)) || (right(u) && right(w)))
            }
            Variant::G3 => in_x(u) == in_x(w) || is(a1, b1) || is(a2, b2) || is(a3, b3),
        }
    }

    #[test]
    fn edge_sets_match_the_definitions() {
        for k in 2..=4 {
            for v in [Variant::G1, Variant::G2, Variant::G3] {
                let c = construction_a(k, v).unwrap();
                let n = 4 * k + 1;
                let mut count = 0;
                for u in 0..n {
                    for w in u + 1..n {
                        assert_eq!(c.graph.has_edge(u, w), predicate(k, v, u, w), "k={k} {v:?} {u}{w}");
                        count += predicate(k, v, u, w) as usize;
                    }
                }
                assert_eq!(c.graph.m(), count);
            }
        }
        assert_eq!(construction_a(3, Variant::G2).unwrap().graph.m(), 47);
    }

    #[test]
    fn sampler() {
        let g = random_dirac_hc_graph(7, 1, 200, 0.55).unwrap().unwrap();
        assert!(2 * g.min_degree() >= 6 && is_hamilton_connected(&g).connected);
        assert_eq!(random_dirac_hc_graph(7, 1, 200, 0.55).unwrap().unwrap(), g);
        assert_eq!(random_dirac_hc_graph(4, 1, 10, 0.5), Err(Error::EvenOrder(4)));
        assert_eq!(random_dirac_hc_graph(7, 1, 10, 0.0), Ok(None));
    }

    #[test]
    fn switcher_instances_close_up() {
        for seed in 0..20 {
            let inst = random_switcher_instance(2 + (seed as usize % 4), seed).unwrap();
            let (c1, c2) = crate::hamgen::assemble_switch_cycles(&inst.graph, &inst.switcher, &inst.closing).unwrap();
            assert!(c1.is_valid_in(&inst.graph) && c2.is_valid_in(&inst.graph));
        }
    }
}
