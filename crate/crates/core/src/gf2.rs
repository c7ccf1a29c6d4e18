//! Linear algebra over GF(2) on the edge space of a [`Graph`].
//!
//! An [`EdgeVector`] is a subset of `E(G)` written in the graph's edge
//! ordering. A [`Gf2Basis`] keeps its rows in echelon form keyed by the lowest
//! set coordinate, so membership tests cost at most `rank` row additions.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeVector {
    words: Vec<u64>,
    len: usize,
}

impl EdgeVector {
    pub fn zeros(len: usize) -> Self {
        EdgeVector { words: vec![0; len.div_ceil(64)], len }
    }

    /// Vector with exactly the given coordinates set.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = EdgeVector::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    /// Indicator vector of an edge set of `g`.
    pub fn from_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<Self> {
        let mut v = EdgeVector::zeros(g.m());
        for &(a, b) in edges {
            let id = g.edge_id(a, b).ok_or(Error::UnknownEdge(a.min(b), a.max(b)))?;
            v.set(id, true);
        }
        Ok(v)
    }

    /// Edge vector of the closed walk through `cycle` (last vertex joined to the first).
    pub fn from_cycle(g: &Graph, cycle: &[usize]) -> Result<Self> {
        let k = cycle.len();
        let pairs: Vec<_> = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect();
        let mut v = EdgeVector::zeros(g.m());
        for (a, b) in pairs {
            let id = g.edge_id(a, b).ok_or(Error::UnknownEdge(a.min(b), a.max(b)))?;
            v.flip(id);
        }
        Ok(v)
    }

    /// Edge vector of the path through `path`.
    pub fn from_path(g: &Graph, path: &[usize]) -> Result<Self> {
        let mut v = EdgeVector::zeros(g.m());
        for w in path.windows(2) {
            let id = g.edge_id(w[0], w[1]).ok_or(Error::UnknownEdge(w[0].min(w[1]), w[0].max(w[1])))?;
            v.flip(id);
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] & bit(i % 64) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, on: bool) {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        if on {
            self.words[i / 64] |= bit(i % 64);
        } else {
            self.words[i / 64] &= !bit(i % 64);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        self.words[i / 64] ^= bit(i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| Bits(w).map(move |b| i * 64 + b))
    }

    /// The edges of `g` selected by this vector, in edge order.
    pub fn edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.support().map(|i| g.edges()[i]).collect()
    }

    fn check_len(&self, other: &EdgeVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, got: other.len });
        }
        Ok(())
    }

    /// `|supp(v) ∩ supp(w)| mod 2`.
    pub fn parity_with(&self, other: &EdgeVector) -> Result<bool> {
        self.check_len(other)?;
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        Ok(ones % 2 == 1)
    }

    #[inline]
    fn xor_in(&mut self, other: &EdgeVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

impl BitXorAssign<&EdgeVector> for EdgeVector {
    fn bitxor_assign(&mut self, rhs: &EdgeVector) {
        assert_eq!(self.len, rhs.len, "edge vectors of different graphs");
        self.xor_in(rhs);
    }
}

impl BitXor<&EdgeVector> for &EdgeVector {
    type Output = EdgeVector;

    fn bitxor(self, rhs: &EdgeVector) -> EdgeVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for EdgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.support()).finish()
    }
}

/// GF(2) dot product of two edge vectors.
pub fn intersection_parity(v: &EdgeVector, w: &EdgeVector) -> Result<bool> {
    v.parity_with(w)
}

/// Linearly independent rows in echelon form.
///
/// Row pivots are the lowest set coordinates and are pairwise distinct;
/// `pivot_row[c]` names the row whose pivot is `c`.
#[derive(Clone, Debug)]
pub struct Gf2Basis {
    len: usize,
    rows: Vec<EdgeVector>,
    pivot_row: Vec<Option<usize>>,
}

impl Gf2Basis {
    pub fn new(len: usize) -> Self {
        Gf2Basis { len, rows: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a EdgeVector>>(len: usize, vectors: I) -> Result<Self> {
        let mut b = Gf2Basis::new(len);
        for v in vectors {
            b.insert(v)?;
        }
        Ok(b)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Length of the vectors this basis spans.
    #[inline]
    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[EdgeVector] {
        &self.rows
    }

    fn check(&self, v: &EdgeVector) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch { expected: self.len, got: v.len() });
        }
        Ok(())
    }

    /// Reduces `v` until it is zero or its lowest coordinate is not a pivot.
    fn reduce(&self, v: &mut EdgeVector) -> Option<usize> {
        while let Some(lead) = v.leading() {
            match self.pivot_row[lead] {
                Some(r) => v.xor_in(&self.rows[r]),
                None => return Some(lead),
            }
        }
        None
    }

    pub fn in_span(&self, v: &EdgeVector) -> Result<bool> {
        self.check(v)?;
        let mut w = v.clone();
        Ok(self.reduce(&mut w).is_none())
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &EdgeVector) -> Result<bool> {
        self.check(v)?;
        let mut w = v.clone();
        match self.reduce(&mut w) {
            None => Ok(false),
            Some(lead) => {
                self.pivot_row[lead] = Some(self.rows.len());
                self.rows.push(w);
                Ok(true)
            }
        }
    }

    /// Functional form of [`insert`](Self::insert).
    pub fn inserted(mut self, v: &EdgeVector) -> Result<(Self, bool)> {
        let grew = self.insert(v)?;
        Ok((self, grew))
    }

    /// Rows in reduced row-echelon form, sorted by pivot.
    pub fn reduced_rows(&self) -> Vec<EdgeVector> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.leading());
        // Clear each pivot column from every earlier row, highest pivot first.
        for i in (0..rows.len()).rev() {
            let p = rows[i].leading().expect("basis rows are non-zero");
            let (head, tail) = rows.split_at_mut(i);
            for r in head.iter_mut() {
                if r.get(p) {
                    r.xor_in(&tail[0]);
                }
            }
        }
        rows
    }

    /// Basis of `{w : w·v = 0 for every v in the span}`.
    pub fn orthogonal_complement(&self) -> Gf2Basis {
        let rows = self.reduced_rows();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap()).collect();
        let mut is_pivot = vec![false; self.len];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Gf2Basis::new(self.len);
        for f in (0..self.len).filter(|&c| !is_pivot[c]) {
            let mut w = EdgeVector::zeros(self.len);
            w.set(f, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(f) {
                    w.set(p, true);
                }
            }
            let grew = out.insert(&w).expect("length checked");
            debug_assert!(grew);
        }
        out
    }
}

/// Orthogonal complement of `basis` inside `GF(2)^m`.
pub fn orthogonal_complement(basis: &Gf2Basis, m: usize) -> Result<Gf2Basis> {
    if basis.dim() != m {
        return Err(Error::LengthMismatch { expected: m, got: basis.dim() });
    }
    Ok(basis.orthogonal_complement())
}

/// A spanning forest grown by BFS from the lowest vertex of each component.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    /// BFS parent of each vertex; roots point to themselves.
    pub parent: Vec<usize>,
    pub depth: Vec<usize>,
    pub components: usize,
    tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn bfs(g: &Graph) -> Self {
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut tree_edge = vec![false; g.m()];
        let mut components = 0;
        for root in 0..n {
            if parent[root] != usize::MAX {
                continue;
            }
            components += 1;
            parent[root] = root;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for w in Bits(g.adj_mask(v)) {
                    if parent[w] == usize::MAX {
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        tree_edge[g.edge_id(v, w).unwrap()] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest { parent, depth, components, tree_edge }
    }

    pub fn is_tree_edge(&self, id: usize) -> bool {
        self.tree_edge[id]
    }

    /// Tree path from `u` to `v` (same component), as a vertex sequence.
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            left.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            right.push(b);
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

/// Fundamental cycles of the BFS spanning forest, one per non-tree edge in edge order.
///
/// Each entry is the cycle's vertex sequence starting at the smaller endpoint
/// of its non-tree edge.
pub fn fundamental_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let forest = SpanningForest::bfs(g);
    g.edges()
        .iter()
        .enumerate()
        .filter(|(id, _)| !forest.is_tree_edge(*id))
        .map(|(_, &(u, v))| forest.tree_path(u, v))
        .collect()
}

/// Basis of the cycle space `𝓒(G)` from fundamental cycles; rank `m − n + c`.
pub fn cycle_space_basis(g: &Graph) -> Gf2Basis {
    let mut b = Gf2Basis::new(g.m());
    for cyc in fundamental_cycles(g) {
        let v = EdgeVector::from_cycle(g, &cyc).expect("fundamental cycle uses graph edges");
        let grew = b.insert(&v).expect("length matches");
        debug_assert!(grew, "fundamental cycles are independent");
    }
    b
}

/// `m − n + c`.
pub fn cycle_space_dim(g: &Graph) -> usize {
    g.m() + g.components().len() - g.n()
}
