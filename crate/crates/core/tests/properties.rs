use hamgen_core::classification::{
    build_case2_partition, build_case3_partition, local_density, DensityBudget, DensityOutcome, ThresholdParams,
};
use hamgen_core::edgelist;
use hamgen_core::gf2::{cycle_space_basis, cycle_space_dim, fundamental_cycles, EdgeVector, Gf2Basis};
use hamgen_core::hamgen::{check_r, find_r, is_hamilton_generated, RSearch, Verdict};
use hamgen_core::hamilton::{
    all_hamilton_cycles, enumerate_hamilton_cycles, hamilton_cycle_through, hamilton_path_between, is_path,
    SearchBudget, Visit,
};
use hamgen_core::structures::LinearForest;
use hamgen_core::{Graph, VertexSet};
use num_rational::Ratio;
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn arb_graph(lo: usize, hi: usize, p: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn hamilton_span(g: &Graph) -> Gf2Basis {
    let mut basis = Gf2Basis::new(g.m());
    for c in all_hamilton_cycles(g).unwrap() {
        basis.insert(&c.to_vector(g)).unwrap();
    }
    basis
}

/// Every ordering of `rest` between fixed ends, for tiny graphs.
fn brute_path_exists(g: &Graph, u: usize, v: usize) -> bool {
    fn rec(g: &Graph, last: usize, left: &mut Vec<usize>, v: usize) -> bool {
        if left.is_empty() {
            return g.has_edge(last, v);
        }
        for i in 0..left.len() {
            let w = left[i];
            if g.has_edge(last, w) {
                left.remove(i);
                let ok = rec(g, w, left, v);
                left.insert(i, w);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut rest: Vec<usize> = (0..g.n()).filter(|&w| w != u && w != v).collect();
    rec(g, u, &mut rest, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn degree_sum_and_edge_order(g in arb_graph(1, 14, 0.4)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.m());
        prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert!(u < v);
            prop_assert_eq!(g.edge_id(v, u), Some(i));
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(1, 14, 0.4)) {
        prop_assert_eq!(edgelist::parse(&edgelist::write(&g)).unwrap(), g);
    }

    #[test]
    fn cycle_space_rank_and_complement(g in arb_graph(1, 12, 0.35)) {
        let c = g.components().len();
        let basis = cycle_space_basis(&g);
        prop_assert_eq!(basis.rank(), g.m() + c - g.n());
        prop_assert_eq!(cycle_space_dim(&g), basis.rank());
        let comp = basis.orthogonal_complement();
        prop_assert_eq!(comp.rank() + basis.rank(), g.m());
        for a in comp.rows() {
            for b in basis.rows() {
                prop_assert!(!a.parity_with(b).unwrap());
            }
        }
        for cyc in fundamental_cycles(&g) {
            prop_assert!(EdgeVector::from_cycle(&g, &cyc).is_ok());
        }
    }

    #[test]
    fn hamilton_cycles_are_deterministic_and_valid(g in arb_graph(3, 9, 0.6)) {
        let first = all_hamilton_cycles(&g).unwrap();
        prop_assert_eq!(&first, &all_hamilton_cycles(&g).unwrap());
        let space = cycle_space_basis(&g);
        for c in &first {
            prop_assert!(c.is_valid_in(&g));
            prop_assert!(space.in_span(&c.to_vector(&g)).unwrap());
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &first {
            prop_assert!(seen.insert(c.order().to_vec()));
        }
    }

    #[test]
    fn generation_verdict_matches_the_span(g in arb_graph(3, 8, 0.65)) {
        let status = is_hamilton_generated(&g, SearchBudget::unlimited()).unwrap();
        let span = hamilton_span(&g);
        let dim = cycle_space_dim(&g);
        prop_assert_eq!(status.dim, dim);
        match status.verdict {
            Verdict::Generated => {
                prop_assert_eq!(span.rank(), dim);
                for cyc in fundamental_cycles(&g) {
                    prop_assert!(span.in_span(&EdgeVector::from_cycle(&g, &cyc).unwrap()).unwrap());
                }
            }
            Verdict::NotGenerated { cycle, witness } => {
                prop_assert!(span.rank() < dim);
                prop_assert_eq!(&EdgeVector::from_cycle(&g, &cycle).unwrap(), &witness);
                prop_assert!(!span.in_span(&witness).unwrap());
                prop_assert_eq!(status.rank, span.rank());
            }
            Verdict::Inconclusive => prop_assert!(false, "unlimited budget"),
        }
    }

    #[test]
    fn found_r_subgraphs_satisfy_their_checks(g in arb_graph(5, 9, 0.7)) {
        prop_assume!(g.n() % 2 == 1);
        let cycles = all_hamilton_cycles(&g).unwrap();
        prop_assume!(!cycles.is_empty());
        if let Ok(RSearch::Found(r)) = find_r(&g, SearchBudget::unlimited()) {
            prop_assert!(r.checks.all_hold());
            prop_assert_eq!(check_r(&g, &r.edges, SearchBudget::unlimited()).unwrap(), r.checks);
            prop_assert!(r.edges.weight() > 0 && r.edges.weight() < g.m());
            for c in &cycles {
                prop_assert!(!c.to_vector(&g).parity_with(&r.edges).unwrap());
            }
        }
    }

    #[test]
    fn forced_edges_agree_with_enumeration(g in arb_graph(4, 8, 0.7), pick in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        prop_assume!(g.m() > 0);
        // Greedily keep edges that extend a linear forest.
        let mut deg = vec![0usize; g.n()];
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for ix in pick {
            let (u, v) = g.edges()[ix.index(g.m())];
            if deg[u] < 2 && deg[v] < 2 && !chosen.contains(&(u, v)) {
                let mut trial = chosen.clone();
                trial.push((u, v));
                if forest_paths(g.n(), &trial).is_some() {
                    chosen = trial;
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        let paths = forest_paths(g.n(), &chosen).unwrap();
        let forest = LinearForest::new(&g, &paths).unwrap();
        let expected = all_hamilton_cycles(&g)
            .unwrap()
            .into_iter()
            .any(|c| chosen.iter().all(|&(u, v)| c.contains_edge(u, v)));
        match hamilton_cycle_through(&g, &forest).unwrap() {
            Some(c) => {
                prop_assert!(expected && c.is_valid_in(&g));
                prop_assert!(chosen.iter().all(|&(u, v)| c.contains_edge(u, v)));
            }
            None => prop_assert!(!expected),
        }
    }

    #[test]
    fn hamilton_paths_agree_with_brute_force(g in arb_graph(3, 7, 0.6), a in 0usize..7, b in 0usize..7) {
        let (u, v) = (a % g.n(), b % g.n());
        prop_assume!(u != v);
        match hamilton_path_between(&g, u, v).unwrap() {
            Some(p) => {
                prop_assert!(is_path(&g, &p) && p.len() == g.n());
                prop_assert_eq!((p[0], p[g.n() - 1]), (u, v));
            }
            None => prop_assert!(!brute_path_exists(&g, u, v)),
        }
    }

    #[test]
    fn capped_enumeration_is_a_prefix(g in arb_graph(5, 8, 0.8), cap in 1u64..20) {
        let all = all_hamilton_cycles(&g).unwrap();
        let mut got = Vec::new();
        enumerate_hamilton_cycles(&g, SearchBudget::cycles(cap), |c| {
            got.push(c.clone());
            Visit::Continue
        })
        .unwrap();
        prop_assert_eq!(&got[..], &all[..got.len()]);
        prop_assert_eq!(got.len() as u64, cap.min(all.len() as u64));
    }

    #[test]
    fn built_partitions_cover_the_vertex_set(g in arb_graph(6, 14, 0.5), seed in any::<u64>()) {
        let n = g.n();
        let p = ThresholdParams::default();
        let mask = seed & ((1u64 << n) - 1);
        let a = VertexSet::from_mask(n, mask).unwrap();
        for w in [build_case2_partition(&g, &a, &p), build_case3_partition(&g, &a, &p)] {
            let parts = w.parts.clone().unwrap();
            prop_assert!(parts.is_partition_of(n));
            prop_assert_eq!(parts.t().rem_euclid(2), (n % 2) as i64);
            if let Some(z) = &w.z_parts {
                prop_assert!(z.z1.is_subset(&parts.z));
                prop_assert!(parts.z.is_subset(&z.z1.union(&z.z2).union(&z.z3)));
            }
        }
        prop_assert_eq!(build_case3_partition(&g, &a, &p), build_case3_partition(&g, &a, &p));
    }

    #[test]
    fn exhaustive_density_is_the_true_minimum(g in arb_graph(4, 8, 0.5)) {
        let n = g.n();
        let param = Ratio::new(1, 5);
        let size = ((Ratio::from_integer(1) - param) * Ratio::from_integer(n as i64) / Ratio::from_integer(2))
            .ceil()
            .to_integer() as usize;
        let mut best = usize::MAX;
        for a in 0u64..1 << n {
            if a.count_ones() as usize != size {
                continue;
            }
            for b in 0u64..1 << n {
                if b.count_ones() as usize != size {
                    continue;
                }
                let e = g
                    .edges()
                    .iter()
                    .filter(|&&(u, v)| {
                        let (ua, ub, va, vb) = (a >> u & 1, b >> u & 1, a >> v & 1, b >> v & 1);
                        (ua & vb) | (va & ub) == 1
                    })
                    .count();
                best = best.min(e);
            }
        }
        let got = match local_density(&g, param, &DensityBudget::default()) {
            DensityOutcome::Holds { min_edges } => min_edges,
            DensityOutcome::Violated { edges, .. } => edges,
            DensityOutcome::Inconclusive { .. } => unreachable!(),
        };
        prop_assert_eq!(got, best);
    }
}

/// Splits an edge set of maximum degree two into vertex paths, or `None` if it contains a cycle.
fn forest_paths(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].len() != 1 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&nx) = adj[cur].iter().find(|&&w| !seen[w]) {
            seen[nx] = true;
            path.push(nx);
            cur = nx;
        }
        paths.push(path);
    }
    let covered = paths.iter().map(|p| p.len() - 1).sum::<usize>();
    (covered == edges.len()).then_some(paths)
}
