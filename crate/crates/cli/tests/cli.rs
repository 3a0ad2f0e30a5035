use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vcfc").chain(args.iter().copied());
    let code = vcfc_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("vcfc-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn records(json: &str) -> Vec<Value> {
    let v: Value = serde_json::from_str(json).unwrap();
    v["records"].as_array().unwrap().clone()
}

#[test]
fn solve_generated_families() {
    let (code, out, _) = run(&["--gen", "path 7", "--json", "solve"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["vcfc"], 3);
    assert_eq!(recs[0]["status"], "ok");

    let (code, out, _) = run(&["--gen", "complete 5", "--json", "solve"]);
    assert_eq!(code, 0);
    assert_eq!(records(&out)[0]["vcfc"], 2);
}

#[test]
fn disconnected_and_malformed_lines() {
    let input = tmp("mixed.g6", "A_\n\nA?\n?!\nBw\n");
    let (code, out, err) = run(&["--input", input.to_str().unwrap(), "--json", "solve"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"));
    let recs = records(&out);
    let ids: Vec<_> = recs.iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 3, 4, 5]);
    assert_eq!(recs[1]["status"], "skipped");
    assert_eq!(recs[2]["status"], "input-error");
    assert_eq!(recs[3]["vcfc"], 2);

    let input = tmp("disconnected.g6", "A?\n");
    let (code, out, _) = run(&["--input", input.to_str().unwrap(), "--json", "solve"]);
    assert_eq!(code, 0);
    assert_eq!(records(&out)[0]["status"], "skipped");
}

#[test]
fn budget_exhaustion_exit_code() {
    let (code, out, _) = run(&["--gen", "path 12", "--max-k", "3", "--json", "solve"]);
    assert_eq!(code, 3);
    assert_eq!(records(&out)[0]["status"], "budget-exhausted");
    let (code, _, _) = run(&[
        "--gen",
        "path 12",
        "--search-only",
        "--node-budget",
        "50",
        "solve",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn verify_examples() {
    let (code, ruler, _) = run(&["--gen", "path 7", "construct", "ruler"]);
    assert_eq!(code, 0);
    let coloring = tmp("ruler.txt", &ruler);
    let (code, out, _) = run(&[
        "--gen",
        "path 7",
        "verify",
        "--coloring",
        coloring.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: true"));

    let bad = tmp("p4.txt", "2\n0 1\n1 2\n2 2\n3 1\n");
    let (code, out, _) = run(&[
        "--gen",
        "path 4",
        "verify",
        "--coloring",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("failing pair: (1, 2)"), "{out}");

    let short = tmp("short.txt", "2\n0 1\n1 2\n");
    let (code, _, err) = run(&[
        "--gen",
        "path 3",
        "verify",
        "--coloring",
        short.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("2 entries"), "{err}");
}

#[test]
fn verify_json_certificate() {
    let coloring = tmp("c5.txt", "2\n0 2\n1 1\n2 1\n3 1\n4 1\n");
    let (code, out, _) = run(&[
        "--gen",
        "cycle 5",
        "--json",
        "verify",
        "--coloring",
        coloring.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["certificate"]["witnesses"].as_array().unwrap().len(), 10);
}

#[test]
fn constructions() {
    let (code, out, _) = run(&["--gen", "corona 5 2", "--json", "construct", "corona"]);
    assert_eq!(code, 0);
    let rec = &records(&out)[0];
    assert_eq!(
        (rec["k"].as_u64(), rec["verified"].as_bool()),
        (Some(3), Some(true))
    );

    let (code, out, _) = run(&["--gen", "trees 8", "--csv", "construct", "centroid-ranking"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 23);
    assert!(rows.iter().all(|r| &r[4] == "true"));

    let (code, _, err) = run(&["--gen", "cycle 5", "construct", "tree-level"]);
    assert_eq!(code, 2);
    assert!(err.contains("graph 1"));
}

#[test]
fn bounds_and_spanning_tree() {
    let (code, out, _) = run(&["--gen", "path 8", "--json", "bounds"]);
    assert_eq!(code, 0);
    let rec = &records(&out)[0];
    assert_eq!(
        (rec["lower"].as_u64(), rec["upper"].as_u64()),
        (Some(3), Some(4))
    );
    let (_, out, _) = run(&["--gen", "path 8", "--strict-bounds", "--json", "bounds"]);
    assert_eq!(records(&out)[0]["lower"], 4);

    let tree = tmp("path6.el", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let (code, out, _) = run(&[
        "--gen",
        "cycle 6",
        "--json",
        "bounds",
        "--spanning-tree",
        tree.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(records(&out)[0]["spanning_tree"], 3);
    let (code, _, _) = run(&[
        "--gen",
        "star 5",
        "bounds",
        "--spanning-tree",
        tree.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn generate_round_trips_through_solve() {
    let (code, out, _) = run(&["generate", "trees 7"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 11);
    let file = tmp("trees7.g6", &out);
    let (code, out, _) = run(&["--input", file.to_str().unwrap(), "--csv", "solve"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(reader.records().count(), 11);

    let (code, out, _) = run(&["--gen", "cycle 4", "--format", "edgelist", "generate"]);
    assert_eq!(code, 0);
    let file = tmp("c4.el", &out);
    let (code, out, _) = run(&[
        "--input",
        file.to_str().unwrap(),
        "--format",
        "edgelist",
        "--json",
        "solve",
    ]);
    assert_eq!(code, 0);
    assert_eq!(records(&out)[0]["vcfc"], 2);
}

#[test]
fn parallel_reports_match_sequential() {
    let strip = |s: &str| -> Vec<Value> {
        records(s)
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("elapsed_ms");
                r
            })
            .collect()
    };
    let (_, seq, _) = run(&["--gen", "all_connected 5", "--json", "solve"]);
    let (_, par, _) = run(&[
        "--gen",
        "all_connected 5",
        "--threads",
        "3",
        "--json",
        "solve",
    ]);
    assert_eq!(strip(&seq), strip(&par));
    assert_eq!(strip(&seq).len(), 728);
}

#[test]
fn regress_caps_and_passes() {
    let (code, _, err) = run(&["regress", "--max-n", "8"]);
    assert_eq!(code, 2);
    assert!(err.contains("max n"));
    let (code, out, _) = run(&["--json", "regress", "--max-n", "5", "--samples", "60"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn conjecture_examples() {
    let (code, out, _) = run(&["--gen", "path 8", "--json", "conjecture"]);
    assert_eq!(code, 0);
    let rec = &records(&out)[0];
    assert_eq!(
        (rec["vcfc"].as_u64(), rec["path_bound"].as_u64()),
        (Some(4), Some(4))
    );
    assert_eq!(rec["holds"], true);

    let (_, out, _) = run(&["--gen", "complete 2", "--json", "conjecture"]);
    assert_eq!(records(&out)[0]["holds"], true);

    let (code, out, _) = run(&["--gen", "all_connected 6 dedup", "--json", "conjecture"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 112);
    assert!(recs.iter().all(|r| r["holds"] == true));

    let (code, out, _) = run(&[
        "--gen",
        "path 12",
        "--search-only",
        "--node-budget",
        "40",
        "--json",
        "conjecture",
    ]);
    assert_eq!(code, 3);
    let rec = &records(&out)[0];
    assert!(rec["holds"].is_null());
    assert_eq!(rec["status"], "budget-exhausted");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["--gen", "hexagon 3", "solve"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["generate"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("conjecture"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_vcfc");
    let out = Command::new(bin)
        .args(["--gen", "path 5", "solve"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
    let out = Command::new(bin)
        .args(["regress", "--max-n", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
