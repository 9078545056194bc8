use std::io::Write;
use std::process::{Command, Output, Stdio};

use bcontinuity::graph::{generate, parse_graph6, Family};
use serde_json::Value;

fn bcont(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bcont"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let out = bcont(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = bcont(args, "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn spectrum_of_the_cube() {
    let v = json(&["spectrum", "--gen", "hypercube:3", "--format", "json"], "");
    assert_eq!(v["spectrum"], serde_json::json!([2, 4]));
    assert_eq!(v["continuous"], false);
}

#[test]
fn analyze_path() {
    let v = json(&["analyze", "--gen", "path:5", "--k", "3", "--format", "json"], "");
    assert_eq!(v["m"], 3);
    assert_eq!(v["girth"], "acyclic");
    let row = &v["irises"][0];
    assert_eq!(row["k"], 3);
    assert_eq!(row["iris"]["center"], 2);
    assert_eq!(row["iris"]["s"], serde_json::json!([1, 3]));
    assert_eq!(row["coloring"]["built"], "3,2,1,3,2");
}

#[test]
fn generate_round_trips() {
    let out = stdout(&["generate", "--gen", "cycle:10"]);
    let g = parse_graph6(out.trim()).unwrap();
    assert_eq!(g, generate(&Family::Cycle(10)).unwrap());

    let trees = stdout(&["generate", "--gen", "trees:8"]);
    assert_eq!(trees.lines().count(), 23);

    let random = stdout(&["generate", "--gen", "random_tree:9", "--seed", "4", "--count", "3"]);
    let lines: Vec<_> = random.lines().collect();
    assert_eq!(lines.len(), 3);
    let third = generate(&Family::RandomTree { n: 9, seed: 6 }).unwrap();
    assert_eq!(parse_graph6(lines[2]).unwrap(), third);
}

#[test]
fn screen_trees_on_eight_vertices() {
    let trees = stdout(&["generate", "--gen", "trees:8"]);
    let v = json(&["screen", "--format", "json"], &trees);
    assert_eq!(v["summary"]["scanned"], 23);
    assert_eq!(v["summary"]["continuous"], 23);
    assert_eq!(v["summary"]["non_continuous"], serde_json::json!([]));
}

#[test]
fn screen_flags_the_crown() {
    let crown = stdout(&["generate", "--gen", "crown:4"]);
    let stream = format!("C~\nnot graph6!\n{crown}");
    let v = json(&["screen", "--format", "json"], &stream);
    let s = &v["summary"];
    assert_eq!((s["scanned"].as_u64(), s["parse_errors"].as_u64()), (Some(2), Some(1)));
    assert_eq!(s["non_continuous"][0]["line"], 3);
    assert_eq!(s["non_continuous"][0]["spectrum"], serde_json::json!([2, 4]));
    assert_eq!(v["lines"][1]["status"], "parse_error");
    assert!(v["lines"][2].get("witnesses").is_none());

    let verbose = json(&["screen", "--format", "json", "--verbose"], &stream);
    assert_eq!(verbose["lines"][2]["witnesses"]["4"].as_str().map(|s| s.split(',').count()), Some(8));
    let text = String::from_utf8(bcont(&["screen", "--verbose"], &stream).stdout).unwrap();
    assert!(text.contains("NON-CONTINUOUS"));
    assert!(text.contains("k = 4: "));
}

#[test]
fn screen_filters() {
    let stream = "C~\nCr\nEhEG\n";
    let v = json(&["screen", "--format", "json", "--bipartite"], stream);
    assert_eq!(v["summary"]["filtered"], 1);
    let v = json(&["screen", "--format", "json", "--girth-min", "4"], stream);
    assert_eq!(v["lines"][0]["status"], "filtered");
    let v = json(&["screen", "--format", "json", "--regular"], stream);
    assert_eq!(v["lines"][0]["status"], "screened");
}

#[test]
fn screen_empty_stream() {
    let v = json(&["screen", "--format", "json"], "");
    assert_eq!(v["summary"]["scanned"], 0);
    assert_eq!(v["lines"], serde_json::json!([]));
}

#[test]
fn screen_refuses_over_cap_per_line() {
    let c15 = stdout(&["generate", "--gen", "cycle:15"]);
    let v = json(&["screen", "--format", "json"], &c15);
    assert_eq!(v["summary"]["refused"], 1);
}

#[test]
fn descend_reports() {
    let v = json(&["descend", "--gen", "cycle:11", "--format", "json"], "");
    assert_eq!(v["verdict"], "continuous_certified");
    let v = json(&["descend", "--gen", "hypercube:3", "--format", "json"], "");
    assert_eq!(v["verdict"]["discontinuous"], 3);

    // above the cap, starting from a given coloring
    let v = json(
        &["descend", "--gen", "cycle:20", "--coloring", "1,2,3,1,2,3,1,2,3,1,2,3,1,2,3,1,2,3,1,2", "--format", "json"],
        "",
    );
    assert_eq!(v["start_k"], 3);
    assert_eq!(v["achieved"], serde_json::json!([2, 3]));
}

#[test]
fn edge_list_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "4\n0 1\n1 2\n2 3\n3 0").unwrap();
    let v = json(&["spectrum", "--edges", f.path().to_str().unwrap(), "--format", "json"], "");
    assert_eq!(v["spectrum"], serde_json::json!([2]));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["descend", "--gen", "random_girth:12:5", "--seed", "9", "--format", "json"];
    let a = bcont(&args, "");
    let b = bcont(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bcont(&["spectrum", "--gen", "cycle:15"], "").status.code(), Some(3));
    assert_eq!(bcont(&["spectrum", "--gen", "cycle:15", "--cap", "15"], "").status.code(), Some(0));
    assert_eq!(bcont(&["spectrum"], "").status.code(), Some(2));
    assert_eq!(bcont(&["spectrum", "--gen", "path:3", "--g6", "C~"], "").status.code(), Some(2));
    assert_eq!(bcont(&["spectrum", "--gen", "nonsense:3"], "").status.code(), Some(2));
    assert_eq!(bcont(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(bcont(&["generate", "--gen", "hypercube:6"], "").status.code(), Some(2));
    assert_eq!(bcont(&["descend", "--gen", "path:4", "--coloring", "1,1,2,2"], "").status.code(), Some(2));
}
