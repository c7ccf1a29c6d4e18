use std::time::Instant;

use hamgen_core::classification::{
    build_case2_partition, build_case3_partition, classify as run_classification, lemma_hypothesis_report, CaseTag,
    Classification, LemmaShape,
};
use hamgen_core::constructions::random_dirac_hc_graph;
use hamgen_core::hamgen::{
    find_r, is_hamilton_generated, non_generation_certificates, Certificate, HamGenStatus, RSearch, Verdict,
};
use hamgen_core::hamilton::{is_hamilton_connected, SearchBudget};
use hamgen_core::structures::{bipartite_matching, disjoint_paths, is_md_connected, max_linear_forest};
use hamgen_core::{edgelist, Graph, VertexSet};
use log::{debug, info, warn};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    parse_list, parse_pairs, CheckArgs, ClassifyArgs, ConstructArgs, ForestArgs, MatchingArgs, PathsArgs, SurveyArgs,
};
use crate::config::{density_budget, search_budget, threshold_params, ExperimentConfig, GraphSource};
use crate::error::{CliError, CliResult};
use crate::report::{graph_hash, graph_summary, write_file, Report};

/// Exit code of `survey` when a non-generated sample has no R-subgraph.
pub const EXIT_VIOLATION: i32 = 3;

fn edge_list(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn vertex_list(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn short(hash: &str) -> &str {
    &hash[..12]
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn r_search_json(r: &hamgen_core::Result<RSearch>, g: &Graph) -> Value {
    match r {
        Ok(RSearch::Found(r)) => json!({
            "result": "found",
            "edges": r.edges.edges(g),
            "checks": r.checks,
            "complement_dim": r.complement_dim,
        }),
        Ok(RSearch::Exhausted { complement_dim }) => json!({ "result": "exhausted", "complement_dim": complement_dim }),
        Ok(RSearch::Inconclusive { complement_dim, examined }) => {
            json!({ "result": "inconclusive", "complement_dim": complement_dim, "examined": examined })
        }
        Err(e) => json!({ "result": "error", "message": e.to_string() }),
    }
}

fn r_label(r: &hamgen_core::Result<RSearch>) -> &'static str {
    match r {
        Ok(RSearch::Found(_)) => "found",
        Ok(RSearch::Exhausted { .. }) => "exhausted",
        Ok(RSearch::Inconclusive { .. }) => "inconclusive",
        Err(_) => "error",
    }
}

fn status_json(s: &HamGenStatus, g: &Graph) -> Value {
    let witness = match &s.verdict {
        Verdict::NotGenerated { cycle, witness } => json!({ "cycle": cycle, "edges": witness.edges(g) }),
        _ => Value::Null,
    };
    json!({
        "status": s.label(),
        "rank": s.rank,
        "dim": s.dim,
        "hamilton_cycles": s.cycles,
        "nodes": s.nodes,
        "witness": witness,
    })
}

pub fn check(a: &CheckArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let budget = search_budget(&a.common)?;
    let g = source.load()?;
    let start = Instant::now();
    let status = is_hamilton_generated(&g, budget)?;
    let hash = graph_hash(&g);
    eprintln!("graph: n={} m={} min_degree={} hash={hash}", g.n(), g.m(), g.min_degree());
    eprintln!("hamilton cycles seen: {} (search nodes {})", status.cycles, status.nodes);
    eprintln!("rank {} of cycle space dimension {}", status.rank, status.dim);
    let mut record = json!({ "graph": graph_summary(&g) });
    record["check"] = status_json(&status, &g);
    let mut certificates: Vec<Certificate> = Vec::new();
    let mut r_label_text = "skipped";
    if let Verdict::NotGenerated { cycle, .. } = &status.verdict {
        eprintln!("cycle outside the Hamilton span: {}", vertex_list(cycle));
        certificates = non_generation_certificates(&g, budget);
        for c in &certificates {
            match c {
                Certificate::ForbiddenEdge { edge } => {
                    eprintln!("certificate: forbidden edge {}-{} (on a cycle, on no Hamilton cycle)", edge.0, edge.1)
                }
                Certificate::Parity { set, cycle } => eprintln!(
                    "certificate: parity class of {} edges, met oddly by cycle {}: {}",
                    set.len(),
                    vertex_list(cycle),
                    edge_list(set)
                ),
            }
        }
        if !a.skip_r {
            let r = find_r(&g, budget);
            r_label_text = r_label(&r);
            match &r {
                Ok(RSearch::Found(r)) => eprintln!(
                    "R-subgraph: {} edges (complement dimension {}): {}",
                    r.edges.weight(),
                    r.complement_dim,
                    edge_list(&r.edges.edges(&g))
                ),
                Ok(other) => eprintln!("R-subgraph search: {other:?}"),
                Err(e) => eprintln!("R-subgraph search not run: {e}"),
            }
            record["r_subgraph"] = r_search_json(&r, &g);
        }
    } else {
        r_label_text = "n/a";
    }
    record["certificates"] = serde_json::to_value(&certificates).expect("certificates serialize");
    record["runtime_ms"] = json!(millis(start));
    println!(
        "check status={} rank={} dim={} certificates={} r={} graph={}",
        status.label(),
        status.rank,
        status.dim,
        certificates.len(),
        r_label_text,
        short(&hash)
    );
    let code = match status.verdict {
        Verdict::Generated => 0,
        Verdict::NotGenerated { .. } => 1,
        Verdict::Inconclusive => 2,
    };
    if let Some(out) = &a.common.out {
        let config = ExperimentConfig {
            task: "check",
            source: Some(source),
            params: None,
            budget,
            density: None,
            seed: None,
            out: Some(out.clone()),
            extra: json!({ "skip_r": a.skip_r }),
        };
        let summary = json!({ "graphs": 1, "status": status.label(), "exit_code": code });
        Report::new(config, vec![record], summary).write(out)?;
    }
    Ok(code)
}

/// Routing entries in the case ledger (the failed dense check that selects a
/// case) are informational; only the lemma hypotheses decide the exit code.
fn classify_exit(c: &Classification) -> i32 {
    let Some(report) = &c.report else {
        return 2;
    };
    if c.case == CaseTag::Unrefinable || report.ledger.has_unknown() {
        return 2;
    }
    if !report.hypotheses_hold {
        return 1;
    }
    if report.conclusion.is_none() {
        return 2;
    }
    0
}

pub fn classify(a: &ClassifyArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let budget = search_budget(&a.common)?;
    let params = threshold_params(&a.params)?;
    let density = density_budget(&a.params)?;
    let g = source.load()?;
    let start = Instant::now();
    for note in params.hierarchy_notes() {
        warn!("parameter ordering not respected: {note}");
    }
    let c = match &a.a {
        None => run_classification(&g, &params, budget, &density)?,
        Some(list) => {
            let set = VertexSet::from_vertices(g.n(), parse_list(list, "--a")?)?;
            let (witness, shape) = match a.shape.as_str() {
                "biclique" => (build_case2_partition(&g, &set, &params), LemmaShape::Biclique),
                "bipartite" => (build_case3_partition(&g, &set, &params), LemmaShape::Bipartite),
                other => {
                    return Err(CliError::Usage(format!("unknown shape `{other}`, expected biclique or bipartite")))
                }
            };
            let report = lemma_hypothesis_report(&g, &witness, shape, &params, budget, &density)?;
            Classification { case: witness.case, witness, report: Some(report) }
        }
    };
    let hash = graph_hash(&g);
    eprintln!("graph: n={} m={} min_degree={} hash={hash}", g.n(), g.m(), g.min_degree());
    eprintln!("case: {:?}", c.case);
    if let Some(parts) = &c.witness.parts {
        eprintln!("X = {{{}}}", vertex_list(&parts.x.to_vec()));
        eprintln!("Y = {{{}}}", vertex_list(&parts.y.to_vec()));
        eprintln!("Z = {{{}}}", vertex_list(&parts.z.to_vec()));
    }
    eprintln!("case ledger:");
    for e in &c.witness.ledger.entries {
        eprintln!("  {e}");
    }
    let (shape, hyp, conclusion) = match &c.report {
        Some(r) => {
            eprintln!("{:?} hypotheses:", r.shape);
            for e in &r.ledger.entries {
                eprintln!("  {e}");
            }
            let concl = match r.conclusion {
                Some(true) => "generated",
                Some(false) => "not_generated",
                None => "inconclusive",
            };
            eprintln!("conclusion: {concl}");
            if r.inconsistent {
                eprintln!("INCONSISTENT: every hypothesis holds but the conclusion fails");
            }
            (format!("{:?}", r.shape).to_lowercase(), if r.hypotheses_hold { "pass" } else { "fail" }, concl)
        }
        None => ("none".to_string(), "none", "none"),
    };
    let code = classify_exit(&c);
    println!(
        "classify case={} shape={shape} hypotheses={hyp} conclusion={conclusion} graph={}",
        format!("{:?}", c.case).to_lowercase(),
        short(&hash)
    );
    if let Some(out) = &a.common.out {
        let config = ExperimentConfig {
            task: "classify",
            source: Some(source),
            params: Some(params),
            budget,
            density: Some(density),
            seed: None,
            out: Some(out.clone()),
            extra: json!({ "a": a.a, "shape": a.shape }),
        };
        let record = json!({
            "graph": graph_summary(&g),
            "classification": c,
            "runtime_ms": millis(start),
        });
        let summary = json!({ "graphs": 1, "case": c.case, "exit_code": code });
        Report::new(config, vec![record], summary).write(out)?;
    }
    Ok(code)
}

/// One CSV row of a survey.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub seed: u64,
    pub trial: usize,
    pub m: Option<usize>,
    pub delta: Option<usize>,
    pub ham_connected: Option<bool>,
    pub status: String,
    pub rank: Option<usize>,
    pub dim: Option<usize>,
    pub r_found: String,
    pub r_dim_complement: Option<usize>,
    pub runtime_ms: u64,
}

pub const SURVEY_COLUMNS: [&str; 12] = [
    "n",
    "seed",
    "trial",
    "m",
    "delta",
    "ham_connected",
    "status",
    "rank",
    "dim",
    "r_found",
    "r_dim_complement",
    "runtime_ms",
];

struct Trial {
    row: SurveyRow,
    record: Value,
    violation: bool,
}

fn survey_trial(n: usize, base_seed: u64, trial: usize, a: &SurveyArgs, budget: SearchBudget) -> CliResult<Trial> {
    let start = Instant::now();
    let seed = base_seed.wrapping_add(trial as u64);
    let mut row = SurveyRow {
        n,
        seed,
        trial,
        m: None,
        delta: None,
        ham_connected: None,
        status: "no_sample".into(),
        rank: None,
        dim: None,
        r_found: "n/a".into(),
        r_dim_complement: None,
        runtime_ms: 0,
    };
    let Some(g) = random_dirac_hc_graph(n, seed, a.attempts, a.p)? else {
        row.runtime_ms = millis(start);
        let record = json!({ "n": n, "seed": seed, "trial": trial, "status": "no_sample" });
        return Ok(Trial { row, record, violation: false });
    };
    row.m = Some(g.m());
    row.delta = Some(g.min_degree());
    row.ham_connected = Some(is_hamilton_connected(&g).connected);
    let status = is_hamilton_generated(&g, budget)?;
    row.status = status.label().into();
    row.rank = Some(status.rank);
    row.dim = Some(status.dim);
    let mut record = json!({ "n": n, "seed": seed, "trial": trial, "graph": graph_summary(&g) });
    record["check"] = status_json(&status, &g);
    let mut violation = false;
    if let Verdict::NotGenerated { .. } = status.verdict {
        let r = find_r(&g, budget);
        row.r_found = match &r {
            Ok(RSearch::Found(found)) => {
                row.r_dim_complement = Some(found.complement_dim);
                violation = !found.checks.all_hold();
                if violation { "false" } else { "true" }.into()
            }
            Ok(RSearch::Exhausted { complement_dim }) => {
                row.r_dim_complement = Some(*complement_dim);
                violation = true;
                "false".into()
            }
            Ok(RSearch::Inconclusive { complement_dim, .. }) => {
                row.r_dim_complement = Some(*complement_dim);
                "inconclusive".into()
            }
            Err(_) => "error".into(),
        };
        record["r_subgraph"] = r_search_json(&r, &g);
        if violation {
            record["edge_list"] = json!(edgelist::write(&g));
        }
    }
    record["violation"] = json!(violation);
    row.runtime_ms = millis(start);
    debug!("survey n={n} trial={trial} status={} r={}", row.status, row.r_found);
    Ok(Trial { row, record, violation })
}

pub fn survey(a: &SurveyArgs) -> CliResult<i32> {
    let orders = parse_list(&a.n, "--n")?;
    if orders.is_empty() {
        return Err(CliError::Usage("--n needs at least one order".into()));
    }
    if let Some(&bad) = orders.iter().find(|&&n| n % 2 == 0 || n < 5) {
        return Err(CliError::Usage(format!("survey orders must be odd and at least 5, got {bad}")));
    }
    if !(0.0..=1.0).contains(&a.p) || a.attempts == 0 {
        return Err(CliError::Usage("--p must lie in [0, 1] and --attempts must be positive".into()));
    }
    let budget = search_budget(&a.common)?;
    let jobs: Vec<(usize, usize)> = orders.iter().flat_map(|&n| (0..a.trials).map(move |t| (n, t))).collect();
    info!("survey: {} trials on {} worker threads", jobs.len(), rayon::current_num_threads());
    let trials: Vec<Trial> =
        jobs.par_iter().map(|&(n, t)| survey_trial(n, a.seed, t, a, budget)).collect::<CliResult<_>>()?;

    if let Some(path) = &a.csv {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        w.write_record(SURVEY_COLUMNS)?;
        for t in &trials {
            w.serialize(&t.row)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    let count = |label: &str| trials.iter().filter(|t| t.row.status == label).count();
    let violations: Vec<&Trial> = trials.iter().filter(|t| t.violation).collect();
    for t in &violations {
        eprintln!(
            "VIOLATION: n={} seed={} trial={}: not Hamilton-generated and no R-subgraph",
            t.row.n, t.row.seed, t.row.trial
        );
    }
    let r_found = trials.iter().filter(|t| t.row.r_found == "true").count();
    let summary = json!({
        "rows": trials.len(),
        "no_sample": count("no_sample"),
        "generated": count("generated"),
        "not_generated": count("not_generated"),
        "inconclusive": count("inconclusive"),
        "r_found": r_found,
        "violations": violations.len(),
    });
    eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    let code = if violations.is_empty() { 0 } else { EXIT_VIOLATION };
    println!(
        "survey rows={} generated={} not_generated={} r_found={} violations={}",
        trials.len(),
        count("generated"),
        count("not_generated"),
        r_found,
        violations.len()
    );
    if let Some(out) = &a.common.out {
        let config = ExperimentConfig {
            task: "survey",
            source: None,
            params: None,
            budget,
            density: None,
            seed: Some(a.seed),
            out: Some(out.clone()),
            extra: json!({ "orders": orders, "trials": a.trials, "p": a.p, "attempts": a.attempts, "csv": a.csv }),
        };
        let mut summary = summary;
        summary["exit_code"] = json!(code);
        Report::new(config, trials.into_iter().map(|t| t.record).collect(), summary).write(out)?;
    }
    Ok(code)
}

pub fn construct(a: &ConstructArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let g = source.load()?;
    let text = edgelist::write(&g);
    let status =
        format!("construct n={} m={} min_degree={} graph={}", g.n(), g.m(), g.min_degree(), short(&graph_hash(&g)));
    match &a.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            println!("{status}");
        }
        None => {
            print!("{text}");
            eprintln!("{status}");
        }
    }
    Ok(0)
}

fn simple_config(
    task: &'static str,
    source: GraphSource,
    budget: SearchBudget,
    out: &std::path::Path,
    extra: Value,
) -> ExperimentConfig {
    ExperimentConfig {
        task,
        source: Some(source),
        params: None,
        budget,
        density: None,
        seed: None,
        out: Some(out.to_path_buf()),
        extra,
    }
}

pub fn paths(a: &PathsArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let budget = search_budget(&a.common)?;
    let pairs = parse_pairs(&a.pairs)?;
    let g = source.load()?;
    let md = is_md_connected(&g, a.m, a.d, a.limit);
    let md_json = match &md {
        Ok(r) => {
            match &r.witness {
                None => eprintln!("({}, {})-connected: yes", a.m, a.d),
                Some(w) => eprintln!(
                    "({}, {})-connected: no; removing {{{}}} leaves {} and {} too far apart",
                    a.m,
                    a.d,
                    vertex_list(&w.removed.to_vec()),
                    w.pair.0,
                    w.pair.1
                ),
            }
            serde_json::to_value(r).expect("serializes")
        }
        Err(e) => {
            eprintln!("({}, {})-connectivity not checked: {e}", a.m, a.d);
            json!({ "error": e.to_string() })
        }
    };
    let routed = disjoint_paths(&g, &pairs, a.m, a.d)?;
    match &routed {
        Some(ps) => ps.iter().for_each(|p| eprintln!("path: {}", vertex_list(p))),
        None => eprintln!("greedy routing failed"),
    }
    let md_label = match &md {
        Ok(r) if r.connected => "yes",
        Ok(_) => "no",
        Err(_) => "unchecked",
    };
    println!(
        "paths md_connected={md_label} routed={} pairs={} graph={}",
        routed.is_some(),
        pairs.len(),
        short(&graph_hash(&g))
    );
    if let Some(out) = &a.common.out {
        let extra = json!({ "pairs": pairs, "m": a.m, "d": a.d, "limit": a.limit.to_string() });
        let record = json!({ "graph": graph_summary(&g), "md_connectivity": md_json, "paths": routed });
        let summary = json!({ "routed": routed.is_some() });
        Report::new(simple_config("paths", source, budget, out, extra), vec![record], summary).write(out)?;
    }
    Ok(if routed.is_some() { 0 } else { 1 })
}

pub fn matching(a: &MatchingArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let budget = search_budget(&a.common)?;
    let g = source.load()?;
    let n = g.n();
    let x = VertexSet::from_vertices(n, parse_list(&a.x, "--x")?)?;
    let y = match &a.y {
        Some(s) => VertexSet::from_vertices(n, parse_list(s, "--y")?)?,
        None => x.complement(),
    };
    let h = g.bipartite_between(&x, &y)?;
    let res = bipartite_matching(&h.graph, &h.map_set(&x), &h.map_set(&y))?;
    let mut pairs: Vec<(usize, usize)> = res.matching.iter().map(|&(u, v)| (h.lift(u), h.lift(v))).collect();
    pairs.sort_unstable();
    let cover = VertexSet::from_vertices(n, res.cover.iter().map(|v| h.lift(v)))?;
    eprintln!("matching: {}", edge_list(&pairs));
    eprintln!("König cover: {{{}}}", vertex_list(&cover.to_vec()));
    println!("matching size={} cover={} graph={}", pairs.len(), cover.len(), short(&graph_hash(&g)));
    if let Some(out) = &a.common.out {
        let extra = json!({ "x": x, "y": y });
        let record = json!({ "graph": graph_summary(&g), "size": pairs.len(), "matching": pairs, "cover": cover });
        let summary = json!({ "size": pairs.len() });
        Report::new(simple_config("matching", source, budget, out, extra), vec![record], summary).write(out)?;
    }
    Ok(0)
}

pub fn forest(a: &ForestArgs) -> CliResult<i32> {
    let source = GraphSource::from_args(&a.source)?;
    let budget = search_budget(&a.common)?;
    let g = source.load()?;
    let set = match &a.vertices {
        Some(s) => VertexSet::from_vertices(g.n(), parse_list(s, "--vertices")?)?,
        None => g.vertices(),
    };
    let sub = g.induced(&set);
    let (f, forest) = max_linear_forest(&sub.graph);
    let paths: Vec<Vec<usize>> = forest.paths().iter().map(|p| sub.lift_path(p)).collect();
    for p in &paths {
        eprintln!("path: {}", vertex_list(p));
    }
    println!("forest f={f} paths={} vertices={} graph={}", paths.len(), set.len(), short(&graph_hash(&g)));
    if let Some(out) = &a.common.out {
        let extra = json!({ "vertices": set });
        let record = json!({ "graph": graph_summary(&g), "f": f, "paths": paths });
        let summary = json!({ "f": f });
        Report::new(simple_config("forest", source, budget, out, extra), vec![record], summary).write(out)?;
    }
    Ok(0)
}
