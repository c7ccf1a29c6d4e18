//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hamgen_core::classification::{
    build_case2_partition, build_case3_partition, lemma_hypothesis_report, DensityBudget, LemmaShape, Parts, Quantity,
    ThresholdParams,
};
use hamgen_core::constructions::{
    complete_graph, construction_a, random_dirac_hc_graph, random_switcher_instance, LabeledConstruction, Variant,
};
use hamgen_core::gf2::{cycle_space_basis, EdgeVector, Gf2Basis};
use hamgen_core::graph::cycle_graph;
use hamgen_core::hamgen::{
    assemble_switch_cycles, check_parity_certificate, check_r, is_hamilton_generated, Certificate, Verdict,
};
use hamgen_core::hamilton::{
    edge_on_hamilton_cycle, enumerate_hamilton_cycles, fuji_threshold, hamilton_cycle_through, hamilton_m_cycle,
    is_hamilton_connected, posa_guarantees, sigma11, Rational, SearchBudget, SearchOutcome, Visit,
};
use hamgen_core::structures::{
    bipartite_matching, disjoint_paths, is_md_connected, max_linear_forest, LinearForest, DEFAULT_MD_LIMIT,
};
use hamgen_core::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn set(n: usize, vs: impl IntoIterator<Item = usize>) -> VertexSet {
    VertexSet::from_vertices(n, vs).unwrap()
}

/// Components by union-find, independent of the graph's own traversal.
fn component_count(g: &Graph) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = g.n();
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// `n` minus the minimum number of vertex-disjoint paths covering V, by subset DP.
fn brute_linear_forest(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let full = (1usize << n) - 1;
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        for v in 0..n {
            if ends[mask] >> v & 1 == 0 {
                continue;
            }
            for w in 0..n {
                if mask >> w & 1 == 0 && g.has_edge(v, w) {
                    ends[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    let mut cover = vec![usize::MAX; 1 << n];
    cover[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let mut sub = mask;
        while sub > 0 {
            if sub & low != 0 && ends[sub] != 0 && cover[mask ^ sub] != usize::MAX {
                cover[mask] = cover[mask].min(cover[mask ^ sub] + 1);
            }
            sub = (sub - 1) & mask;
        }
    }
    n - cover[full]
}

fn brute_matching(g: &Graph, xs: &[usize], ys: &[usize]) -> usize {
    fn rec(g: &Graph, xs: &[usize], ys: &[usize], i: usize, used: u32) -> usize {
        if i == xs.len() {
            return 0;
        }
        let mut best = rec(g, xs, ys, i + 1, used);
        for (j, &y) in ys.iter().enumerate() {
            if used >> j & 1 == 0 && g.has_edge(xs[i], y) {
                best = best.max(1 + rec(g, xs, ys, i + 1, used | 1 << j));
            }
        }
        best
    }
    rec(g, xs, ys, 0, 0)
}

/// Splits a max-degree-two acyclic edge set into vertex paths.
fn forest_paths(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
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
    paths
}

/// Random linear forest with exactly `k` edges of `g`, if the greedy draw reaches `k`.
fn random_forest(rng: &mut ChaCha8Rng, g: &Graph, k: usize) -> Option<Vec<(usize, usize)>> {
    let mut edges = g.edges().to_vec();
    edges.shuffle(rng);
    let mut deg = vec![0usize; g.n()];
    let mut comp: Vec<usize> = (0..g.n()).collect();
    let mut chosen = Vec::new();
    for (u, v) in edges {
        if chosen.len() == k {
            break;
        }
        if deg[u] < 2 && deg[v] < 2 && comp[u] != comp[v] {
            let (old, new) = (comp[u], comp[v]);
            comp.iter_mut().filter(|c| **c == old).for_each(|c| *c = new);
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
        }
    }
    (chosen.len() == k).then_some(chosen)
}

fn hamilton_span_exhaustive(g: &Graph) -> (Gf2Basis, u64, SearchOutcome) {
    let mut basis = Gf2Basis::new(g.m());
    let stats = enumerate_hamilton_cycles(g, SearchBudget::unlimited(), |c| {
        basis.insert(&c.to_vector(g)).unwrap();
        Visit::Continue
    })
    .unwrap();
    (basis, stats.cycles, stats.outcome)
}

fn build(k: usize, v: Variant) -> LabeledConstruction {
    construction_a(k, v).unwrap()
}

fn c1_construction_k2() -> Outcome {
    let mut notes = Vec::new();
    for (v, delta) in [(Variant::G1, 4), (Variant::G2, 4), (Variant::G3, 3)] {
        let c = build(2, v);
        let g = &c.graph;
        ensure(g.n() == 9 && g.min_degree() == delta, || format!("{v:?}: n={} delta={}", g.n(), g.min_degree()))?;
        let hc = is_hamilton_connected(g).connected;
        ensure(hc == (v == Variant::G3), || format!("{v:?}: Hamilton-connected = {hc}"))?;
        let (span, cycles, outcome) = hamilton_span_exhaustive(g);
        ensure(cycles > 0, || format!("{v:?}: no Hamilton cycle"))?;
        ensure(outcome == SearchOutcome::Exhausted, || format!("{v:?}: enumeration capped"))?;
        let s = is_hamilton_generated(g, SearchBudget::unlimited()).unwrap();
        let Verdict::NotGenerated { cycle, witness } = &s.verdict else {
            return Err(format!("{v:?}: verdict {}", s.label()));
        };
        ensure(s.cycles == cycles, || format!("{v:?}: verdict saw {} of {cycles} cycles", s.cycles))?;
        let rebuilt = EdgeVector::from_cycle(g, cycle).map_err(|e| format!("{v:?}: witness is not a cycle: {e}"))?;
        ensure(&rebuilt == witness, || format!("{v:?}: witness vector mismatch"))?;
        ensure(!span.in_span(witness).unwrap(), || format!("{v:?}: witness lies in the Hamilton span"))?;
        notes.push(format!("{v:?}: delta={delta} cycles={cycles} rank={}/{}", span.rank(), s.dim));
    }
    Ok(notes.join("; "))
}

fn c2_construction_k3() -> Outcome {
    let g1 = build(3, Variant::G1);
    let (b1, b2) = (g1.b(1), g1.b(2));
    ensure(g1.graph.has_edge(b1, g1.a(1)) && g1.graph.has_edge(b2, g1.a(1)), || "b1b2 not on a triangle".into())?;
    ensure(!edge_on_hamilton_cycle(&g1.graph, b1, b2), || "b1b2 lies on a Hamilton cycle".into())?;
    let forced = LinearForest::new(&g1.graph, &[vec![b1, b2]]).unwrap();
    ensure(hamilton_cycle_through(&g1.graph, &forced).unwrap().is_none(), || "forced b1b2 search succeeded".into())?;

    let g3 = build(3, Variant::G3);
    let g = &g3.graph;
    let inside: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(u, v)| g3.x.contains(u) && g3.x.contains(v)).collect();
    let s = EdgeVector::from_edges(g, &inside).unwrap();
    let mut odd = 0u64;
    let stats = enumerate_hamilton_cycles(g, SearchBudget::unlimited(), |c| {
        if c.to_vector(g).parity_with(&s).unwrap() {
            odd += 1;
        }
        Visit::Continue
    })
    .unwrap();
    let verified = stats.outcome == SearchOutcome::Exhausted || stats.cycles >= 10_000;
    ensure(verified, || format!("only {} cycles enumerated", stats.cycles))?;
    ensure(odd == 0, || format!("{odd} Hamilton cycles meet E(G[X]) oddly"))?;
    let cert = check_parity_certificate(g, &inside, SearchBudget::unlimited()).unwrap();
    let Some(Certificate::Parity { cycle, .. }) = cert else {
        return Err(format!("no parity certificate: {cert:?}"));
    };
    let cv = EdgeVector::from_cycle(g, &cycle).unwrap();
    ensure(cv.parity_with(&s).unwrap(), || "certificate cycle meets the class evenly".into())?;
    Ok(format!(
        "G1 forbidden edge b1b2=({b1},{b2}); G3 E(G[X]) even on {} Hamilton cycles ({:?}), odd cycle {:?}",
        stats.cycles, stats.outcome, cycle
    ))
}

fn biclique_value(c: &LabeledConstruction) -> Quantity {
    let p = ThresholdParams::default();
    let w = build_case2_partition(&c.graph, &c.x, &p);
    let r = lemma_hypothesis_report(
        &c.graph,
        &w,
        LemmaShape::Biclique,
        &p,
        SearchBudget::unlimited(),
        &DensityBudget::default(),
    )
    .unwrap();
    r.ledger.get("(4/3)|Z| + m(X,Y) >= 10/3").unwrap().lhs
}

/// Every `(X, Y, Z)` with `X, Y` non-empty: the set of values `(4/3)|Z| + m(X, Y)`.
fn all_biclique_values(g: &Graph) -> BTreeSet<Rational> {
    let n = g.n();
    let mut out = BTreeSet::new();
    let mut labels = vec![0u8; n];
    loop {
        let side = |s: u8| set(n, (0..n).filter(|&v| labels[v] == s));
        let (x, y, z) = (side(0), side(1), side(2));
        if !x.is_empty() && !y.is_empty() {
            let h = g.bipartite_between(&x, &y).unwrap();
            let m = bipartite_matching(&h.graph, &h.map_set(&x), &h.map_set(&y)).unwrap().size();
            out.insert(Rational::new(4, 3) * Rational::from_integer(z.len() as i64) + Rational::from_integer(m as i64));
        }
        let mut i = 0;
        while i < n && labels[i] == 2 {
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        labels[i] += 1;
    }
    out
}

fn c3_remark_values() -> Outcome {
    let eight_thirds = Quantity::Finite(Rational::new(8, 3));
    let three = Quantity::Finite(Rational::from_integer(3));
    let g1 = build(2, Variant::G1);
    let g2 = build(2, Variant::G2);
    let g3 = build(2, Variant::G3);
    let mut failures = Vec::new();
    let v1 = biclique_value(&g1);
    let v3 = biclique_value(&g3);
    if v1 != eight_thirds {
        let reachable = all_biclique_values(&g1.graph).contains(&Rational::new(8, 3));
        failures.push(format!(
            "G1 biclique value {v1} != 8/3 (8/3 over all partitions of G1: {}; G2 gives {})",
            if reachable { "reachable" } else { "unreachable" },
            biclique_value(&g2)
        ));
    }
    if v3 != three {
        failures.push(format!("G3 biclique value {v3} != 3"));
    }
    let p = ThresholdParams::default();
    let w = build_case3_partition(&g1.graph, &g1.x, &p);
    let Parts { x, .. } = w.parts.clone().unwrap();
    let r = lemma_hypothesis_report(
        &g1.graph,
        &w,
        LemmaShape::Bipartite,
        &p,
        SearchBudget::unlimited(),
        &DensityBudget::default(),
    )
    .unwrap();
    let e = r.ledger.get("|X| - |Y| - |Z| <= f(X) - 1").unwrap();
    let (one, zero) = (Quantity::Finite(Rational::from_integer(1)), Quantity::Finite(Rational::from_integer(0)));
    if (e.lhs, e.rhs, e.pass) != (one, zero, false) {
        failures.push(format!("G1 bipartite-shape entry: {e}"));
    }
    let summary =
        format!("G1 {v1}, G3 {v3} (vs 10/3); G1 |X|-|Y|-|Z| = {} vs f(X)-1 = {} with |X| = {}", e.lhs, e.rhs, x.len());
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", failures.join("; ")))
    }
}

fn c4_cycle_rank() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for p in [0.2, 0.5, 0.8] {
        for _ in 0..340 {
            let n = rng.gen_range(1..=12);
            let g = gnp(&mut rng, n, p);
            let expected = g.m() + component_count(&g) - n;
            let got = cycle_space_basis(&g).rank();
            ensure(got == expected, || format!("n={n} m={}: rank {got} != {expected}", g.m()))?;
            count += 1;
        }
    }
    Ok(format!("{count} graphs, zero failures"))
}

fn c5_positives() -> Outcome {
    let mut graphs: Vec<(String, Graph)> =
        [5, 7, 9].iter().map(|&n| (format!("K{n}"), complete_graph(n).unwrap())).collect();
    graphs.extend([3, 5, 7, 9, 11].iter().map(|&n| (format!("C{n}"), cycle_graph(n).unwrap())));
    let mut notes = Vec::new();
    for (name, g) in graphs {
        let t = Instant::now();
        let s = is_hamilton_generated(&g, SearchBudget::unlimited()).unwrap();
        ensure(s.verdict == Verdict::Generated, || format!("{name}: {}", s.label()))?;
        let expected = g.m() - g.n() + 1;
        ensure(s.rank == expected && s.dim == expected, || format!("{name}: rank {} dim {}", s.rank, s.dim))?;
        ensure(t.elapsed() < Duration::from_secs(60), || format!("{name}: {:?}", t.elapsed()))?;
        notes.push(format!("{name} rank {expected} after {} cycles", s.cycles));
    }
    Ok(notes.join(", "))
}

fn hamgen_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamgen"))
}

fn c6_survey_consistency() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (csv_path, json_path) = (dir.path().join("survey.csv"), dir.path().join("survey.json"));
    let out = hamgen_bin()
        .args(["survey", "--n", "7,9,11", "--trials", "34", "--seed", "2024", "--csv"])
        .arg(&csv_path)
        .arg("--out")
        .arg(&json_path)
        .output()
        .unwrap();
    let code = out.status.code().unwrap_or(-1);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&json_path).unwrap()).unwrap();
    let records = report["records"].as_array().unwrap();
    ensure(records.len() >= 100, || format!("{} records", records.len()))?;
    let mut not_generated = 0;
    let mut violations = 0;
    for rec in records {
        let (n, seed) = (rec["n"].as_u64().unwrap() as usize, rec["seed"].as_u64().unwrap());
        if rec["check"]["status"] != "not_generated" {
            continue;
        }
        not_generated += 1;
        let g = random_dirac_hc_graph(n, seed, 1000, 0.55).unwrap().unwrap();
        if rec["violation"] == true {
            violations += 1;
            continue;
        }
        let edges: Vec<(usize, usize)> = serde_json::from_value(rec["r_subgraph"]["edges"].clone()).unwrap();
        let r = EdgeVector::from_edges(&g, &edges).unwrap();
        let checks = check_r(&g, &r, SearchBudget::unlimited()).unwrap();
        ensure(checks.all_hold(), || format!("n={n} seed={seed}: R fails re-check {checks:?}"))?;
    }
    let expected_code = if violations == 0 { 0 } else { 3 };
    ensure(code == expected_code, || format!("exit {code} with {violations} violations"))?;
    Ok(format!("{} samples, {not_generated} not generated, {violations} violations, exit {code}", records.len()))
}

fn c7_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let n = rng.gen_range(1..=8);
        let p = [0.2, 0.4, 0.6, 0.8][i % 4];
        let g = gnp(&mut rng, n, p);
        let (f, forest) = max_linear_forest(&g);
        let brute = brute_linear_forest(&g);
        ensure(f == brute, || format!("forest sample {i}: {f} != {brute}"))?;
        let valid = LinearForest::new(&g, forest.paths()).is_ok() && forest.num_edges() == f;
        ensure(valid, || format!("forest sample {i}: invalid witness"))?;
    }
    for i in 0..200 {
        let (a, b) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let p = rng.gen_range(0.1..0.7);
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(a + b, &edges).unwrap();
        let (x, y) = (set(a + b, 0..a), set(a + b, a..a + b));
        let res = bipartite_matching(&g, &x, &y).unwrap();
        let brute = brute_matching(&g, &x.to_vec(), &y.to_vec());
        ensure(res.size() == brute, || format!("matching sample {i}: {} != {brute}", res.size()))?;
        let covered = g.edges().iter().all(|&(u, v)| res.cover.contains(u) || res.cover.contains(v));
        let disjoint = res.matching.iter().flat_map(|&(u, v)| [u, v]).collect::<BTreeSet<_>>().len() == 2 * res.size();
        let konig = covered
            && disjoint
            && res.cover.len() == res.size()
            && res.matching.iter().all(|&(u, v)| g.has_edge(u, v))
            && res.is_certificate_for(&g, &x, &y);
        ensure(konig, || format!("matching sample {i}: König certificate fails"))?;
    }
    Ok("200 forest samples, 200 matching samples, all König certificates valid".into())
}

fn c8_forced_edges() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 100 {
        let n: usize = rng.gen_range(5..=10);
        let k: usize = rng.gen_range(2..=3);
        let need = (n + k).div_ceil(2);
        let mut g = gnp(&mut rng, n, 0.7);
        while let Some(v) = (0..n).find(|&v| g.degree(v) < need) {
            let missing: Vec<usize> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
            let w = *missing.choose(&mut rng).unwrap();
            g = g.with_edges(&[(v.min(w), v.max(w))]).unwrap();
        }
        let Some(f) = random_forest(&mut rng, &g, k) else {
            continue;
        };
        ensure(posa_guarantees(n, k, g.min_degree()).unwrap(), || "degree condition not met".into())?;
        let forest = LinearForest::new(&g, &forest_paths(n, &f)).unwrap();
        let c = hamilton_cycle_through(&g, &forest).unwrap();
        let ok = c.as_ref().is_some_and(|c| c.is_valid_in(&g) && f.iter().all(|&(u, v)| c.contains_edge(u, v)));
        ensure(ok, || format!("Pósa instance {done}: n={n} k={k} F={f:?} gave {c:?}"))?;
        done += 1;
    }
    let mut bip = 0;
    while bip < 50 {
        let s = rng.gen_range(3..=7);
        let k = rng.gen_range(1..=s);
        let (x, y) = (set(2 * s, 0..s), set(2 * s, s..2 * s));
        let mut perm: Vec<usize> = (s..2 * s).collect();
        perm.shuffle(&mut rng);
        let mut xs: Vec<usize> = (0..s).collect();
        xs.shuffle(&mut rng);
        let matching: Vec<(usize, usize)> = xs[..k].iter().zip(&perm).map(|(&u, &v)| (u, v)).collect();
        let mut edges: BTreeSet<(usize, usize)> = matching.iter().copied().collect();
        for u in 0..s {
            for v in s..2 * s {
                if rng.gen_bool(0.5) {
                    edges.insert((u, v));
                }
            }
        }
        let threshold = fuji_threshold(s, k).unwrap();
        let mut g = Graph::new(2 * s, &edges.iter().copied().collect::<Vec<_>>()).unwrap();
        while !sigma11(&g, &x, &y).unwrap().at_least(threshold) {
            let missing: Vec<(usize, usize)> =
                (0..s).flat_map(|u| (s..2 * s).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
            g = g.with_edges(&[*missing.choose(&mut rng).unwrap()]).unwrap();
        }
        let c = hamilton_m_cycle(&g, &x, &y, &matching).unwrap();
        let ok = c.as_ref().is_some_and(|c| c.is_valid_in(&g) && matching.iter().all(|&(u, v)| c.contains_edge(u, v)));
        ensure(ok, || format!("bipartite instance {bip}: s={s} k={k} M={matching:?} gave {c:?}"))?;
        bip += 1;
    }
    Ok("100 Pósa instances and 50 balanced bipartite instances, all cycles found".into())
}

fn c9_disjoint_paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut verified, mut sampled) = (0, 0);
    while verified < 100 {
        sampled += 1;
        ensure(sampled < 20_000, || format!("only {verified} (m,d)-connected samples found"))?;
        let n = rng.gen_range(5..=12);
        let (m, d) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let p = rng.gen_range(0.6..0.95);
        let g = gnp(&mut rng, n, p);
        if !is_md_connected(&g, m, d, DEFAULT_MD_LIMIT).unwrap().connected {
            continue;
        }
        let most = m.div_ceil(d + 1);
        let l = rng.gen_range(1..=most).min(n / 2);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = (0..l).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
        let paths = disjoint_paths(&g, &pairs, m, d).unwrap();
        let Some(paths) = paths else {
            return Err(format!("n={n} m={m} d={d} pairs {pairs:?}: routing failed"));
        };
        let mut used = BTreeSet::new();
        for (p, &(u, v)) in paths.iter().zip(&pairs) {
            let ok = p.first() == Some(&u)
                && p.last() == Some(&v)
                && p.len() - 1 <= d
                && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && p.iter().all(|&w| used.insert(w));
            ensure(ok, || format!("bad path {p:?} for ({u}, {v})"))?;
        }
        verified += 1;
    }
    Ok(format!("{verified} (m,d)-connected graphs out of {sampled} samples, all routed"))
}

fn c10_switchers() -> Outcome {
    for seed in 0..50u64 {
        let k = 2 + (seed as usize % 4);
        let inst = random_switcher_instance(k, seed).unwrap();
        let g = &inst.graph;
        let (c1, c2) = assemble_switch_cycles(g, &inst.switcher, &inst.closing).unwrap();
        ensure(c1.is_valid_in(g) && c2.is_valid_in(g), || format!("seed {seed}: not Hamilton cycles"))?;
        let (v1, v2) = (c1.to_vector(g), c2.to_vector(g));
        let c = EdgeVector::from_cycle(g, inst.switcher.cycle()).unwrap();
        let diff: BTreeSet<usize> =
            v1.support().collect::<BTreeSet<_>>().symmetric_difference(&v2.support().collect()).copied().collect();
        ensure(diff == c.support().collect(), || format!("seed {seed}: E(C1) xor E(C2) != E(C)"))?;
        ensure(c.parity_with(&inst.r).unwrap(), || format!("seed {seed}: C meets R evenly"))?;
        let (o1, o2) = (v1.parity_with(&inst.r).unwrap(), v2.parity_with(&inst.r).unwrap());
        ensure(o1 != o2, || format!("seed {seed}: parities {o1} {o2}"))?;
    }
    Ok("50 synthetic switchers (k = 2..5)".into())
}

fn strip_runtime(csv: &str) -> String {
    csv.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}

fn run_survey(dir: &Path, name: &str) -> String {
    let path = dir.join(name);
    let status = hamgen_bin()
        .args(["survey", "--n", "7,9", "--trials", "25", "--seed", "7", "--csv"])
        .arg(&path)
        .output()
        .unwrap()
        .status;
    assert!(status.success(), "survey exited with {status}");
    std::fs::read_to_string(path).unwrap()
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (run_survey(dir.path(), "a.csv"), run_survey(dir.path(), "b.csv"));
    ensure(a.lines().count() == 51, || format!("{} lines", a.lines().count()))?;
    ensure(strip_runtime(&a) == strip_runtime(&b), || "CSV outputs differ".into())?;
    Ok("two runs of 50 rows identical apart from runtime_ms".into())
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 11] = [
        ("construction A, k=2", c1_construction_k2, 30),
        ("construction A, k=3 certificates", c2_construction_k3, 300),
        ("remark values 8/3, 3 and 1 > 0", c3_remark_values, 60),
        ("cycle-space rank identity", c4_cycle_rank, 20),
        ("Hamilton-generated positives", c5_positives, 120),
        ("R-subgraph consistency survey", c6_survey_consistency, 600),
        ("oracle equivalences", c7_oracles, 60),
        ("forced-edge Hamilton cycles", c8_forced_edges, 120),
        ("short disjoint paths", c9_disjoint_paths, 120),
        ("switcher algebra", c10_switchers, 30),
        ("survey determinism", c11_determinism, 120),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let result = match result {
            Ok(d) if secs > *limit as f64 => Err(format!("{d}; took {secs:.1}s, limit {limit}s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:>7.2}s] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:>7.2}s] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
