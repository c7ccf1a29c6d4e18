//! Command-line harness around `hamgen-core`.
//!
//! Exit codes: 0/1/2 per subcommand verdict, 3 for a survey consistency
//! violation, 64 usage, 65 bad input data, 74 I/O.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{expand_config, Cli, Command};
use crate::error::CliError;

pub const EXIT_USAGE: i32 = 64;

/// Parses `argv` and runs the subcommand, returning the process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let argv = match expand_config(argv.into_iter().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Classify(a) => commands::classify(a),
        Command::Survey(a) => commands::survey(a),
        Command::Construct(a) => commands::construct(a),
        Command::Paths(a) => commands::paths(a),
        Command::Matching(a) => commands::matching(a),
        Command::Forest(a) => commands::forest(a),
    };
    result.unwrap_or_else(|e: CliError| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}

#[cfg(test)]
mod tests {
    use std::path::{Path, PathBuf};
    use std::sync::Mutex;

    use hamgen_core::hamilton::BUDGET_ENV;
    use serde_json::Value;

    use super::run;

    // Commands read HAMGEN_BUDGET_NODES, so tests that touch it must not overlap with others.
    static LOCK: Mutex<()> = Mutex::new(());

    fn hamgen(args: &[&str]) -> i32 {
        let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
        run(std::iter::once("hamgen").chain(args.iter().copied()).map(Into::into))
    }

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn json(path: &Path) -> Value {
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn s(p: &Path) -> &str {
        p.to_str().unwrap()
    }

    #[test]
    fn check_exit_codes_and_report() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("a1.json");
        assert_eq!(hamgen(&["check", "--construction", "a1", "--k", "2", "--out", s(&out)]), 1);
        let r = json(&out);
        assert_eq!(r["schema_version"], "1");
        assert_eq!(r["rng"], "chacha8");
        assert_eq!(r["config"]["source"]["kind"], "construction");
        let certs = r["records"][0]["certificates"].as_array().unwrap();
        assert!(certs.iter().any(|c| c["ForbiddenEdge"]["edge"] == serde_json::json!([5, 6])));
        assert_eq!(r["records"][0]["r_subgraph"]["result"], "found");

        let c5 = write(dir.path(), "c5.edges", "n 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
        assert_eq!(hamgen(&["check", "--file", s(&c5)]), 0);
        let k5 = write(
            dir.path(),
            "k5.edges",
            &hamgen_core::edgelist::write(&hamgen_core::graph::complete_graph(5).unwrap()),
        );
        assert_eq!(hamgen(&["check", "--file", s(&k5)]), 0);
        assert_eq!(hamgen(&["check", "--random", "9", "--seed", "1", "--p", "1.0", "--budget-nodes", "3"]), 2);
    }

    #[test]
    fn error_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(hamgen(&["check", "--file", "/nonexistent/g.edges"]), 74);
        assert_eq!(hamgen(&["check", "--bogus"]), 64);
        assert_eq!(hamgen(&["check"]), 64);
        assert_eq!(hamgen(&["check", "--construction", "a1", "--random", "7"]), 64);
        assert_eq!(hamgen(&["check", "--construction", "a4"]), 64);
        assert_eq!(hamgen(&["check", "--construction", "a1", "--k", "1"]), 65);
        let bad = write(dir.path(), "bad.edges", "n 3\n0 0\n");
        assert_eq!(hamgen(&["check", "--file", s(&bad)]), 65);
        assert_eq!(hamgen(&["check", "--random", "7", "--p", "0.0", "--attempts", "3"]), 65);
        assert_eq!(hamgen(&["survey", "--n", "8"]), 64);
        assert_eq!(hamgen(&["classify", "--construction", "a1", "--alpha", "2"]), 64);
        assert_eq!(hamgen(&["--version"]), 0);
    }

    #[test]
    fn budget_env_is_read_and_validated() {
        let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let call = |args: &[&str]| run(std::iter::once("hamgen").chain(args.iter().copied()).map(Into::into));
        std::env::set_var(BUDGET_ENV, "3");
        let capped = call(&["check", "--random", "9", "--seed", "1", "--p", "1.0"]);
        let flag_wins = call(&["check", "--random", "9", "--seed", "1", "--p", "1.0", "--budget-nodes", "100000000"]);
        std::env::set_var(BUDGET_ENV, "lots");
        let bad = call(&["check", "--construction", "a1"]);
        std::env::remove_var(BUDGET_ENV);
        assert_eq!((capped, flag_wins, bad), (2, 0, 64));
    }

    #[test]
    fn classify_cases() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(hamgen(&["classify", "--random", "9", "--seed", "1", "--p", "1.0"]), 0);
        let out = dir.path().join("g3.json");
        let code = hamgen(&["classify", "--construction", "a3", "--k", "2", "--a", "0,1,2,3,4", "--out", s(&out)]);
        assert_eq!(code, 1);
        let r = json(&out);
        let ledger = r["records"][0]["classification"]["report"]["ledger"].as_array().unwrap();
        let e = ledger.iter().find(|e| e["name"] == "(4/3)|Z| + m(X,Y) >= 10/3").unwrap();
        assert_eq!((e["lhs"].as_str(), e["pass"].as_bool()), (Some("3"), Some(false)));

        let mut text = String::from("n 14\n0 7\n1 8\n");
        for off in [0, 7] {
            for u in 0..7 {
                for v in u + 1..7 {
                    text.push_str(&format!("{} {}\n", off + u, off + v));
                }
            }
        }
        let planted = write(dir.path(), "planted.edges", &text);
        let out = dir.path().join("planted.json");
        // Even order: the case ledger is clean but the lemma needs n odd.
        assert_eq!(hamgen(&["classify", "--file", s(&planted), "--out", s(&out)]), 1);
        let r = json(&out);
        assert_eq!(r["records"][0]["classification"]["case"], "Case2");
    }

    #[test]
    fn survey_csv_schema_and_seeds() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b, empty) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("e.csv"));
        assert_eq!(hamgen(&["survey", "--n", "7", "--trials", "0", "--csv", s(&empty)]), 0);
        let header = std::fs::read_to_string(&empty).unwrap();
        assert_eq!(header, format!("{}\n", crate::commands::SURVEY_COLUMNS.join(",")));
        assert_eq!(hamgen(&["survey", "--n", "7", "--trials", "6", "--seed", "1", "--csv", s(&a)]), 0);
        assert_eq!(hamgen(&["survey", "--n", "7", "--trials", "6", "--seed", "2", "--csv", s(&b)]), 0);
        let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
        assert_eq!(ta.lines().next(), header.lines().next());
        assert_eq!(ta.lines().count(), 7);
        assert_ne!(ta, tb);
        let row: Vec<&str> = ta.lines().nth(2).unwrap().split(',').collect();
        assert_eq!((row[0], row[1], row[2]), ("7", "2", "1"));
    }

    #[test]
    fn config_file_with_flag_override() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write(dir.path(), "run.cfg", "# sampler\nrandom = 7\nseed=1\np=1.0\nskip_r=true\n");
        assert_eq!(hamgen(&["check", "--config", s(&cfg)]), 0);
        assert_eq!(hamgen(&["check", "--config", s(&cfg), "--p", "0.0", "--attempts", "2"]), 65);
        let nested = write(dir.path(), "nested.cfg", "config=run.cfg\n");
        assert_eq!(hamgen(&["check", "--config", s(&nested)]), 64);
        let unknown = write(dir.path(), "unknown.cfg", "colour=blue\n");
        assert_eq!(hamgen(&["check", "--config", s(&unknown)]), 64);
    }

    #[test]
    fn construct_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g2.edges");
        assert_eq!(hamgen(&["construct", "--construction", "a2", "--k", "3", "--out", s(&path)]), 0);
        let g = crate::config::read_graph(&path).unwrap();
        assert_eq!((g.n(), g.m()), (13, 47));
        assert_eq!(hamgen(&["check", "--file", s(&path), "--skip-r"]), 1);
    }

    #[test]
    fn structure_utilities() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("m.json");
        assert_eq!(hamgen(&["matching", "--construction", "a3", "--x", "0,1,2,3,4", "--out", s(&out)]), 0);
        assert_eq!(json(&out)["records"][0]["size"], 3);
        let out = dir.path().join("f.json");
        assert_eq!(hamgen(&["forest", "--construction", "a1", "--vertices", "0,1,2,3,4", "--out", s(&out)]), 0);
        assert_eq!(json(&out)["records"][0]["f"], 1);
        let k6 = "n 6\n".to_string()
            + &(0..6).flat_map(|u| (u + 1..6).map(move |v| format!("{u} {v}\n"))).collect::<String>();
        let k6 = write(dir.path(), "k6.edges", &k6);
        assert_eq!(hamgen(&["paths", "--file", s(&k6), "--pairs", "0-1,2-3", "--m", "3", "--d", "1"]), 0);
        let c6 = write(dir.path(), "c6.edges", "n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
        assert_eq!(hamgen(&["paths", "--file", s(&c6), "--pairs", "0-3", "--m", "1", "--d", "1"]), 1);
        assert_eq!(hamgen(&["paths", "--file", s(&c6), "--pairs", "0-0", "--m", "1", "--d", "1"]), 65);
    }
}
