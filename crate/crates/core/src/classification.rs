//! Dense / two-cluster / near-bipartite trichotomy with exact-rational ledgers,
//! the partition refinement that produces witnesses, the Z-set constructions and
//! the hypothesis evaluators of the three closing lemmas.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, Bits, Graph, VertexSet};
use crate::hamgen::{is_hamilton_generated, Verdict};
use crate::hamilton::{is_hamilton_connected, Rational, SearchBudget};
use crate::structures::{cross_matching_number, max_linear_forest};

fn q(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

/// The thresholds replacing the asymptotic parameter hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdParams {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub eta: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub sigma: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
}

impl Default for ThresholdParams {
    fn default() -> Self {
        ThresholdParams {
            alpha: frac(1, 10),
            beta: frac(1, 50),
            eta: frac(1, 4),
            sigma: frac(1, 40),
            gamma: frac(1, 20),
        }
    }
}

impl ThresholdParams {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("eta", self.eta),
            ("sigma", self.sigma),
            ("gamma", self.gamma),
        ];
        for (name, v) in named {
            if v <= Rational::zero() || v >= Rational::one() {
                return Err(Error::BadParameter { name });
            }
        }
        Ok(())
    }

    /// Orderings the asymptotic argument assumes but which are not enforced.
    pub fn hierarchy_notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.beta >= self.alpha {
            notes.push("beta >= alpha".to_string());
        }
        if self.alpha >= self.eta {
            notes.push("alpha >= eta".to_string());
        }
        if self.gamma >= self.alpha {
            notes.push("gamma >= alpha".to_string());
        }
        notes
    }
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One side of a ledger inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Finite(Rational),
    /// Minimum or maximum over an empty set; the inequality holds vacuously.
    Vacuous,
    /// Could not be evaluated within budget.
    Unknown,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Finite(r) => write!(f, "{r}"),
            Quantity::Vacuous => f.write_str("vacuous"),
            Quantity::Unknown => f.write_str("unknown"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Quantity::Finite(r)
    }
}

impl From<usize> for Quantity {
    fn from(x: usize) -> Self {
        Quantity::Finite(q(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "==")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Eq => "==",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub relation: Relation,
    pub pass: bool,
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{}: {} {} {} [{mark}]", self.name, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn check(
        &mut self,
        name: &str,
        lhs: impl Into<Quantity>,
        relation: Relation,
        rhs: impl Into<Quantity>,
    ) -> bool {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = match (lhs, rhs) {
            (Quantity::Vacuous, _) => true,
            (Quantity::Finite(l), Quantity::Finite(r)) => match relation {
                Relation::Le => l <= r,
                Relation::Ge => l >= r,
                Relation::Lt => l < r,
                Relation::Eq => l == r,
            },
            _ => false,
        };
        self.entries.push(LedgerEntry { name: name.to_string(), lhs, rhs, relation, pass });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn has_unknown(&self) -> bool {
        self.entries.iter().any(|e| e.lhs == Quantity::Unknown || e.rhs == Quantity::Unknown)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn get(&self, name: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn extend(&mut self, other: Ledger) {
        self.entries.extend(other.entries);
    }
}

/// `min_{v ∈ over} |N(v) ∩ into|`, vacuous on an empty `over`.
fn min_into(g: &Graph, into: &VertexSet, over: &VertexSet) -> Quantity {
    g.degree_stats(into, over).map_or(Quantity::Vacuous, |(lo, _)| q(lo).into())
}

fn max_into(g: &Graph, into: &VertexSet, over: &VertexSet) -> Quantity {
    g.degree_stats(into, over).map_or(Quantity::Vacuous, |(_, hi)| q(hi).into())
}

/// Budget for the local-density searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityBudget {
    /// Largest number of (A, B) pairs examined exhaustively.
    pub max_pairs: u128,
    pub restarts: u32,
    pub seed: u64,
}

impl Default for DensityBudget {
    fn default() -> Self {
        DensityBudget { max_pairs: 20_000_000, restarts: 32, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityOutcome {
    /// Every pair meets the bound; `min_edges` is the exhaustive minimum.
    Holds {
        min_edges: usize,
    },
    Violated {
        a: VertexSet,
        b: VertexSet,
        edges: usize,
    },
    /// No violator found and exhaustive search is over budget.
    Inconclusive {
        best_edges: usize,
    },
}

impl DensityOutcome {
    pub fn holds(&self) -> Option<bool> {
        match self {
            DensityOutcome::Holds { .. } => Some(true),
            DensityOutcome::Violated { .. } => Some(false),
            DensityOutcome::Inconclusive { .. } => None,
        }
    }
}

fn within_edges(adj: &[u64], s: u64) -> usize {
    Bits(s).map(|v| (adj[v] & s).count_ones() as usize).sum::<usize>() / 2
}

/// `e(A, B)`, counting an edge inside `A ∩ B` once.
fn pair_edges(adj: &[u64], a: u64, b: u64) -> usize {
    let ordered: usize = Bits(a).map(|v| (adj[v] & b).count_ones() as usize).sum();
    ordered - within_edges(adj, a & b)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn next_subset(s: u64) -> u64 {
    let c = s & s.wrapping_neg();
    let r = s.wrapping_add(c);
    if r == 0 {
        return 0;
    }
    (((r ^ s) >> 2) / c) | r
}

/// Exhaustive minimum of `e(A, B)` over pairs of `size`-subsets.
fn exhaustive_min_pair(g: &Graph, size: usize) -> (u64, u64, usize) {
    let n = g.n();
    let adj = g.adjacency();
    let all = full_mask(n);
    let first = full_mask(size);
    let mut best = (first, first, usize::MAX);
    let mut a = first;
    while a != 0 && a & !all == 0 {
        let mut b = a;
        while b != 0 && b & !all == 0 {
            let e = pair_edges(adj, a, b);
            if e < best.2 {
                best = (a, b, e);
            }
            if size == 0 {
                break;
            }
            b = next_subset(b);
        }
        if size == 0 {
            break;
        }
        a = next_subset(a);
    }
    best
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> u64 {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    vs[..size].iter().fold(0u64, |acc, &v| acc | bit(v))
}

/// Steepest-descent swaps from seeded random starts; returns the best pair seen.
fn local_min_pair(g: &Graph, size: usize, budget: &DensityBudget) -> (u64, u64, usize) {
    let n = g.n();
    let adj = g.adjacency();
    let all = full_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best = (0, 0, usize::MAX);
    for _ in 0..budget.restarts.max(1) {
        let mut a = random_subset(&mut rng, n, size);
        let mut b = random_subset(&mut rng, n, size);
        let mut cur = pair_edges(adj, a, b);
        loop {
            let mut step = None;
            for side in 0..2 {
                let s = if side == 0 { a } else { b };
                for out in Bits(s) {
                    for inn in Bits(all & !s) {
                        let t = (s & !bit(out)) | bit(inn);
                        let e = if side == 0 { pair_edges(adj, t, b) } else { pair_edges(adj, a, t) };
                        if e < step.map_or(cur, |(_, _, e0)| e0) {
                            step = Some((side, t, e));
                        }
                    }
                }
            }
            match step {
                Some((0, t, e)) => (a, cur) = (t, e),
                Some((_, t, e)) => (b, cur) = (t, e),
                None => break,
            }
        }
        if cur < best.2 {
            best = (a, b, cur);
        }
    }
    best
}

fn set(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_mask(n, mask).expect("mask within V")
}

/// Checks `e(A, B) ≥ (param/2)·n²` for all `A, B` with at least `(1 − param)n/2` vertices.
///
/// `e(A, B)` only grows with `A` and `B`, so it suffices to look at sets of the
/// smallest admissible size.
pub fn local_density(g: &Graph, param: Rational, budget: &DensityBudget) -> DensityOutcome {
    let n = g.n();
    let size = ((Rational::one() - param) * q(n) / q(2)).ceil().to_integer().max(0) as usize;
    let size = size.min(n);
    let threshold = param / q(2) * q(n * n);
    let pairs = binomial(n, size).pow(2);
    if pairs <= budget.max_pairs {
        let (a, b, e) = exhaustive_min_pair(g, size);
        if q(e) >= threshold {
            DensityOutcome::Holds { min_edges: e }
        } else {
            DensityOutcome::Violated { a: set(n, a), b: set(n, b), edges: e }
        }
    } else {
        let (a, b, e) = local_min_pair(g, size, budget);
        if q(e) < threshold {
            DensityOutcome::Violated { a: set(n, a), b: set(n, b), edges: e }
        } else {
            DensityOutcome::Inconclusive { best_edges: e }
        }
    }
}

/// The dense case with parameter `α`.
pub fn verify_case1(g: &Graph, p: &ThresholdParams, budget: &DensityBudget) -> DensityOutcome {
    local_density(g, p.alpha, budget)
}

/// Sets `A0, B0` of size `⌈n/2⌉` with `e(A0, B0) < αn²`, if one is found.
pub fn find_sparse_pair(g: &Graph, p: &ThresholdParams, budget: &DensityBudget) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let h = n.div_ceil(2);
    let threshold = p.alpha * q(n * n);
    let (a, b, e) = local_min_pair(g, h, budget);
    if q(e) < threshold {
        return Some((set(n, a), set(n, b)));
    }
    if binomial(n, h).pow(2) <= budget.max_pairs {
        let (a, b, e) = exhaustive_min_pair(g, h);
        if q(e) < threshold {
            return Some((set(n, a), set(n, b)));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Unrefinable,
}

/// A vertex partition `X ∪ Y ∪ Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parts {
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
}

impl Parts {
    /// `t = |X| − |Y| − |Z|`.
    pub fn t(&self) -> i64 {
        self.x.len() as i64 - self.y.len() as i64 - self.z.len() as i64
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        self.x.is_disjoint(&self.y)
            && self.x.is_disjoint(&self.z)
            && self.y.is_disjoint(&self.z)
            && self.x.union(&self.y).union(&self.z) == VertexSet::full(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZParts {
    pub z1: VertexSet,
    pub z2: VertexSet,
    pub z3: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionWitness {
    pub case: CaseTag,
    pub a: Option<VertexSet>,
    pub parts: Option<Parts>,
    pub z_parts: Option<ZParts>,
    pub ledger: Ledger,
}

/// The two-cluster case: size window, sparse cut, dense sides.
pub fn verify_case2(g: &Graph, a: &VertexSet, p: &ThresholdParams) -> Ledger {
    let n = q(g.n());
    let abar = a.complement();
    let mut l = Ledger::default();
    l.check("|A| >= (1/2 - 21a)n", a.len(), Relation::Ge, (frac(1, 2) - q(21) * p.alpha) * n);
    l.check("|A| <= (1/2 + 21a)n", a.len(), Relation::Le, (frac(1, 2) + q(21) * p.alpha) * n);
    l.check("e(A,~A) <= 4a n^2", g.edges_between(a, &abar), Relation::Le, q(4) * p.alpha * n * n);
    l.check("d(G[A]) >= n/5", min_into(g, a, a), Relation::Ge, n / q(5));
    l.check("d(G[~A]) >= n/5", min_into(g, &abar, &abar), Relation::Ge, n / q(5));
    l
}

/// The near-bipartite case: size window, dense cut, sparse side, cross minimum degree.
pub fn verify_case3(g: &Graph, a: &VertexSet, p: &ThresholdParams) -> Ledger {
    let n = q(g.n());
    let abar = a.complement();
    let mut l = Ledger::default();
    l.check("|A| >= (1/2 - 25a)n", a.len(), Relation::Ge, (frac(1, 2) - q(25) * p.alpha) * n);
    l.check("|A| <= (1/2 + 25a)n", a.len(), Relation::Le, (frac(1, 2) + q(25) * p.alpha) * n);
    l.check("e(A,~A) >= (1/4 - 5a)n^2", g.edges_between(a, &abar), Relation::Ge, (frac(1, 4) - q(5) * p.alpha) * n * n);
    l.check("e(A) <= 6a n^2", g.edges_within(a), Relation::Le, q(6) * p.alpha * n * n);
    let cross = match (min_into(g, &abar, a), min_into(g, a, &abar)) {
        (Quantity::Finite(x), Quantity::Finite(y)) => Quantity::Finite(x.min(y)),
        (Quantity::Finite(x), _) | (_, Quantity::Finite(x)) => Quantity::Finite(x),
        _ => Quantity::Vacuous,
    };
    l.check("d(G[A,~A]) >= n/5", cross, Relation::Ge, n / q(5));
    l
}

/// Turns a sparse pair into a two-cluster or near-bipartite witness.
///
/// The small-intersection branch is tried first. Intersections strictly between
/// the two thresholds give an [`CaseTag::Unrefinable`] witness.
pub fn refine_partition(g: &Graph, a0: &VertexSet, b0: &VertexSet, p: &ThresholdParams) -> Result<PartitionWitness> {
    let n = g.n();
    let h = n.div_ceil(2);
    if a0.len() != h || b0.len() != h {
        return Err(Error::BadSizes { expected: h, a: a0.len(), b: b0.len() });
    }
    let nq = q(n);
    let inter = a0.intersection(b0);
    let limit = q(6 * n) / q(25);
    let mut ledger = Ledger::default();
    let small = ledger.check("|A0 & B0| <= 5a n", inter.len(), Relation::Le, q(5) * p.alpha * nq);
    let (case, x_prime, inner) = if small {
        (CaseTag::Case2, a0.difference(b0), true)
    } else if ledger.check("|A0 & B0| >= (1/2 - 5a)n", inter.len(), Relation::Ge, (frac(1, 2) - q(5) * p.alpha) * nq) {
        (CaseTag::Case3, inter, false)
    } else {
        return Ok(PartitionWitness { case: CaseTag::Unrefinable, a: None, parts: None, z_parts: None, ledger });
    };
    let y_prime = x_prime.complement();
    let (w, z) = if inner {
        (
            x_prime.iter().filter(|&v| q(g.degree_into(v, &x_prime)) <= limit).collect::<Vec<_>>(),
            y_prime.iter().filter(|&v| q(g.degree_into(v, &y_prime)) <= limit).collect::<Vec<_>>(),
        )
    } else {
        (
            x_prime.iter().filter(|&v| q(g.degree_into(v, &y_prime)) <= limit).collect::<Vec<_>>(),
            y_prime.iter().filter(|&v| q(g.degree_into(v, &x_prime)) <= limit).collect::<Vec<_>>(),
        )
    };
    let w = VertexSet::from_vertices(n, w)?;
    let z = VertexSet::from_vertices(n, z)?;
    let x = x_prime.difference(&w).union(&z);
    ledger.extend(if inner { verify_case2(g, &x, p) } else { verify_case3(g, &x, p) });
    Ok(PartitionWitness {
        case,
        a: Some(x),
        parts: Some(Parts { x, y: x.complement(), z: VertexSet::empty(n) }),
        z_parts: None,
        ledger,
    })
}

/// Case-2 split: vertices with many neighbours across move to Z.
pub fn build_case2_partition(g: &Graph, a: &VertexSet, p: &ThresholdParams) -> PartitionWitness {
    let n = g.n();
    let nq = q(n);
    let abar = a.complement();
    let heavy = |v: usize, other: &VertexSet| q(g.degree_into(v, other)) >= p.eta * nq;
    let z =
        VertexSet::from_vertices(n, a.iter().filter(|&v| heavy(v, &abar)).chain(abar.iter().filter(|&v| heavy(v, a))))
            .expect("vertices of G");
    let x = a.difference(&z);
    let y = abar.difference(&z);
    let parts = Parts { x, y, z };
    let mut ledger = Ledger::default();
    ledger.check("|Z| <= a n/2", z.len(), Relation::Le, p.alpha * nq / q(2));
    ledger.extend(biclique_conditions(g, &parts, p));
    PartitionWitness { case: CaseTag::Case2, a: Some(*a), parts: Some(parts), z_parts: None, ledger }
}

/// Case-3 split with the Z₁, Z₂, Z₃ rule.
pub fn build_case3_partition(g: &Graph, a: &VertexSet, p: &ThresholdParams) -> PartitionWitness {
    let n = g.n();
    let nq = q(n);
    let abar = a.complement();
    let pick = |over: &VertexSet, pred: &dyn Fn(usize) -> bool| {
        VertexSet::from_vertices(n, over.iter().filter(|&v| pred(v))).expect("vertices of G")
    };
    let z1 = pick(a, &|v| q(g.degree_into(v, a)) >= p.eta * nq);
    let z2 = pick(&abar, &|v| q(g.degree_into(v, &abar)) >= p.eta * nq);
    let z3 = pick(&abar, &|v| q(g.degree_into(v, a)) < (frac(1, 2) - p.eta) * nq);
    let cap = frac(2, 3) * p.alpha * nq;
    let mut ledger = Ledger::default();
    let z = if ledger.check("|Z2| <= (2/3)a n", z2.len(), Relation::Le, cap) {
        z1.union(&z2)
    } else {
        let want = (cap.floor().to_integer().max(0) as usize).saturating_sub(z3.len());
        let z2p = VertexSet::from_vertices(n, z2.difference(&z3).iter().take(want)).expect("vertices of G");
        z1.union(&z2p).union(&z3)
    };
    let x = a.difference(&z);
    let y = abar.difference(&z);
    let parts = Parts { x, y, z };
    ledger.extend(bipartite_conditions(g, &parts, p));
    let (fx, _) = max_linear_forest(&g.induced(&x).graph);
    ledger.check("f(X) >= 2 d(X)", fx, Relation::Ge, min_into(g, &x, &x).scale(2));
    PartitionWitness {
        case: CaseTag::Case3,
        a: Some(*a),
        parts: Some(parts),
        z_parts: Some(ZParts { z1, z2, z3 }),
        ledger,
    }
}

impl Quantity {
    fn scale(self, k: i64) -> Quantity {
        match self {
            Quantity::Finite(r) => Quantity::Finite(r * k),
            other => other,
        }
    }
}

fn biclique_conditions(g: &Graph, parts: &Parts, p: &ThresholdParams) -> Ledger {
    let Parts { x, y, z } = parts;
    let nq = q(g.n());
    let (lo, hi) = ((frac(1, 2) - p.alpha) * nq, (frac(1, 2) + p.alpha) * nq);
    let mut l = Ledger::default();
    l.check("|X| >= (1/2 - a)n", x.len(), Relation::Ge, lo);
    l.check("|X| <= (1/2 + a)n", x.len(), Relation::Le, hi);
    l.check("|Y| >= (1/2 - a)n", y.len(), Relation::Ge, lo);
    l.check("|Y| <= (1/2 + a)n", y.len(), Relation::Le, hi);
    l.check("|Z| <= a n", z.len(), Relation::Le, p.alpha * nq);
    l.check("e(X,Y) <= a n^2", g.edges_between(x, y), Relation::Le, p.alpha * nq * nq);
    l.check("D_X(Y) <= eta n", max_into(g, x, y), Relation::Le, p.eta * nq);
    l.check("D_Y(X) <= eta n", max_into(g, y, x), Relation::Le, p.eta * nq);
    let deg = (frac(1, 2) - q(2) * p.eta) * nq;
    l.check("d(X) >= (1/2 - 2eta)n", min_into(g, x, x), Relation::Ge, deg);
    l.check("d(Y) >= (1/2 - 2eta)n", min_into(g, y, y), Relation::Ge, deg);
    let zdeg = frac(3, 4) * p.eta * nq;
    l.check("d_Y(Z) >= (3/4)eta n", min_into(g, y, z), Relation::Ge, zdeg);
    l.check("d_X(Z) >= (3/4)eta n", min_into(g, x, z), Relation::Ge, zdeg);
    l
}

fn bipartite_conditions(g: &Graph, parts: &Parts, p: &ThresholdParams) -> Ledger {
    let Parts { x, y, z } = parts;
    let nq = q(g.n());
    let mut l = Ledger::default();
    l.check("|Y| >= (1/2 - a)n", y.len(), Relation::Ge, (frac(1, 2) - p.alpha) * nq);
    l.check("|Y| <= |X|", y.len(), Relation::Le, x.len());
    l.check("|X| <= (1/2 + a)n", x.len(), Relation::Le, (frac(1, 2) + p.alpha) * nq);
    l.check("|Z| <= a n", z.len(), Relation::Le, p.alpha * nq);
    l.check("D(G[X]) <= eta n", max_into(g, x, x), Relation::Le, p.eta * nq);
    let deg = (frac(1, 2) - q(2) * p.eta) * nq;
    l.check("d_X(Y) >= (1/2 - 2eta)n", min_into(g, x, y), Relation::Ge, deg);
    l.check("d_Y(X) >= (1/2 - 2eta)n", min_into(g, y, x), Relation::Ge, deg);
    let zdeg = frac(3, 4) * p.eta * nq;
    l.check("d_Y(Z) >= (3/4)eta n", min_into(g, y, z), Relation::Ge, zdeg);
    l.check("d_X(Z) >= (3/4)eta n", min_into(g, x, z), Relation::Ge, zdeg);
    l
}

/// Which closing lemma a witness is evaluated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaShape {
    /// Two clusters joined by few edges, plus a small set Z.
    Biclique,
    /// Near-bipartite with a sparse larger side, plus a small set Z.
    Bipartite,
    /// Locally dense and Hamilton-connected.
    Dense,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub shape: LemmaShape,
    pub ledger: Ledger,
    pub hypotheses_hold: bool,
    /// Whether the Hamilton cycles generate the cycle space; `None` if undecided within budget.
    pub conclusion: Option<bool>,
    /// All hypotheses hold yet the graph is not Hamilton-generated.
    pub inconsistent: bool,
}

/// Evaluates every hypothesis of the lemma named by `shape`, and its conclusion.
pub fn lemma_hypothesis_report(
    g: &Graph,
    w: &PartitionWitness,
    shape: LemmaShape,
    p: &ThresholdParams,
    budget: SearchBudget,
    density: &DensityBudget,
) -> Result<HypothesisReport> {
    let n = g.n();
    let nq = q(n);
    let mut ledger = Ledger::default();
    ledger.check("n odd", n % 2, Relation::Eq, 1usize);
    match shape {
        LemmaShape::Biclique | LemmaShape::Bipartite => {
            let parts = w.parts.as_ref().ok_or_else(|| Error::ShapeMismatch("witness has no X, Y, Z".into()))?;
            if !parts.is_partition_of(n) {
                return Err(Error::ShapeMismatch("X, Y, Z do not partition V(G)".into()));
            }
            if shape == LemmaShape::Biclique {
                ledger.extend(biclique_conditions(g, parts, p));
                let m = cross_matching_number(g, &parts.x, &parts.y)?;
                let value = frac(4, 3) * q(parts.z.len()) + q(m);
                ledger.check("(4/3)|Z| + m(X,Y) >= 10/3", value, Relation::Ge, frac(10, 3));
            } else {
                ledger.extend(bipartite_conditions(g, parts, p));
                let (fx, _) = max_linear_forest(&g.induced(&parts.x).graph);
                ledger.check(
                    "|X| - |Y| - |Z| <= f(X) - 1",
                    Rational::from_integer(parts.t()),
                    Relation::Le,
                    Rational::from_integer(fx as i64 - 1),
                );
            }
        }
        LemmaShape::Dense => {
            ledger.check("d(G) >= (n-1)/2", g.min_degree(), Relation::Ge, (nq - q(1)) / q(2));
            let hc = is_hamilton_connected(g).connected as usize;
            ledger.check("Hamilton-connected", hc, Relation::Eq, 1usize);
            let threshold = p.gamma / q(2) * nq * nq;
            let lhs = match local_density(g, p.gamma, density) {
                DensityOutcome::Holds { min_edges } => Quantity::from(min_edges),
                DensityOutcome::Violated { edges, .. } => Quantity::from(edges),
                DensityOutcome::Inconclusive { .. } => Quantity::Unknown,
            };
            ledger.check("min e(A,B) >= (gamma/2)n^2", lhs, Relation::Ge, threshold);
        }
    }
    let hypotheses_hold = ledger.all_pass();
    let conclusion = if n >= 3 {
        match is_hamilton_generated(g, budget)?.verdict {
            Verdict::Generated => Some(true),
            Verdict::NotGenerated { .. } => Some(false),
            Verdict::Inconclusive => None,
        }
    } else {
        None
    };
    let inconsistent = hypotheses_hold && conclusion == Some(false);
    if inconsistent {
        log::warn!("all {shape:?} hypotheses hold but the graph is not Hamilton-generated");
    }
    Ok(HypothesisReport { shape, ledger, hypotheses_hold, conclusion, inconsistent })
}

/// End-to-end classification: dense check, sparse pair, refinement, Z-sets, lemma report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: CaseTag,
    pub witness: PartitionWitness,
    pub report: Option<HypothesisReport>,
}

pub fn classify(
    g: &Graph,
    p: &ThresholdParams,
    budget: SearchBudget,
    density: &DensityBudget,
) -> Result<Classification> {
    p.validate()?;
    let n = g.n();
    let mut ledger = Ledger::default();
    let dense = verify_case1(g, p, density);
    let lhs = match &dense {
        DensityOutcome::Holds { min_edges } => Quantity::from(*min_edges),
        DensityOutcome::Violated { edges, .. } => Quantity::from(*edges),
        DensityOutcome::Inconclusive { .. } => Quantity::Unknown,
    };
    ledger.check("min e(A,B) >= (a/2)n^2", lhs, Relation::Ge, p.alpha / q(2) * q(n * n));
    if dense.holds() != Some(false) {
        let witness = PartitionWitness { case: CaseTag::Case1, a: None, parts: None, z_parts: None, ledger };
        let report = lemma_hypothesis_report(g, &witness, LemmaShape::Dense, p, budget, density)?;
        return Ok(Classification { case: CaseTag::Case1, witness, report: Some(report) });
    }
    let Some((a0, b0)) = find_sparse_pair(g, p, density) else {
        let witness = PartitionWitness { case: CaseTag::Unrefinable, a: None, parts: None, z_parts: None, ledger };
        return Ok(Classification { case: CaseTag::Unrefinable, witness, report: None });
    };
    let refined = refine_partition(g, &a0, &b0, p)?;
    ledger.extend(refined.ledger.clone());
    let (witness, shape) = match (refined.case, refined.a) {
        (CaseTag::Case2, Some(a)) => (build_case2_partition(g, &a, p), LemmaShape::Biclique),
        (CaseTag::Case3, Some(a)) => (build_case3_partition(g, &a, p), LemmaShape::Bipartite),
        _ => {
            let witness = PartitionWitness { ledger, ..refined };
            return Ok(Classification { case: CaseTag::Unrefinable, witness, report: None });
        }
    };
    let report = lemma_hypothesis_report(g, &witness, shape, p, budget, density)?;
    ledger.extend(witness.ledger.clone());
    let case = witness.case;
    Ok(Classification { case, witness: PartitionWitness { ledger, ..witness }, report: Some(report) })
}
