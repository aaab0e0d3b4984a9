use std::io::Write;
use std::process::{Command, Output, Stdio};

use beid_core::{graph6, is_isomorphic, make_f, make_m};

fn beid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn beid_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_beid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn analyze_staircase_is_cm_with_single_block() {
    let o = beid(&["analyze", "F3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["verdict"], "cohen-macaulay");
    let chains = v["report"]["certificate"]["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 1);
    let factors = chains[0]["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0]["m"], 3);

    let text = stdout(&beid(&["analyze", "F3"]));
    assert!(text.contains("certificate:   [[3]]"), "{text}");
    assert!(text.contains("Cohen-Macaulay (by characterization)"));
}

#[test]
fn analyze_offset_complete_graph_from_graph6_is_not_cm() {
    let g6 = graph6::encode(&make_m(4, false).unwrap());
    let o = beid(&["analyze", &g6, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["report"]["unmixed"], true);
    assert_eq!(v["report"]["dual_connected"], false);
    assert_eq!(v["report"]["peeling_witness"], serde_json::json!([3, 5]));
}

#[test]
fn analyze_interior_two_block_reports_witness() {
    let o = beid(&["analyze", "F3 o F2 o F3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let w = &v["report"]["unmixed_witness"];
    assert_eq!(w["set"], serde_json::json!([3, 5, 6, 8]));
    assert_eq!(w["c"], 4);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn analyze_reads_stdin_and_flags_non_bipartite() {
    let o = beid_stdin(&["analyze", "-"], "C~\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not applicable"));
}

#[test]
fn bad_input_exits_with_input_error() {
    let o = beid(&["analyze", "F3 o"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position"), "{err}");
    assert_eq!(beid(&["generate", "M 4 diagonal"]).status.code(), Some(3));
    assert_eq!(beid(&["dual", "F3 o F2 o F3"]).status.code(), Some(3));
}

#[test]
fn generate_builds_named_graphs() {
    let f4 = stdout(&beid(&["generate", "F4"]));
    let g = graph6::decode(f4.trim()).unwrap();
    assert_eq!(g, make_f(4).unwrap());

    let m = stdout(&beid(&["generate", "M 4 square"]));
    assert_eq!(graph6::decode(m.trim()).unwrap(), make_m(4, true).unwrap());

    let v = json(&beid(&["generate", "fan 6 [3]", "--format", "json"]));
    assert_eq!(v["n"], 9);
    assert_eq!(
        v["predicted_cutsets"],
        serde_json::json!([[], [1], [1, 2], [1, 2, 3]])
    );
}

#[test]
fn generate_output_pipes_into_analyze() {
    let g6 = stdout(&beid(&["generate", "F2 * F3 o F4"]));
    let o = beid_stdin(&["analyze", "-", "--format", "json"], &g6);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let built = graph6::decode(g6.trim()).unwrap();
    let expr = v["report"]["expression"].as_str().unwrap().to_string();
    let again = stdout(&beid(&["generate", &expr]));
    assert!(is_isomorphic(
        &built,
        &graph6::decode(again.trim()).unwrap()
    ));
}

#[test]
fn dual_of_offset_complete_graph() {
    let g6 = graph6::encode(&make_m(4, false).unwrap());
    let v = json(&beid(&["dual", &g6, "--format", "json"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["connected"], false);
    assert_eq!(
        v["edges"],
        serde_json::json!([[0, 1], [0, 2], [1, 3], [2, 3], [3, 5]])
    );
    let dot = stdout(&beid(&["dual", &g6, "--format", "dot"]));
    assert!(dot.starts_with("graph D {") && dot.contains("P_{3,5}"));
}

#[test]
fn census_is_clean_and_job_independent() {
    let a = beid(&[
        "census",
        "--max-n",
        "6",
        "--bipartite-only",
        "--format",
        "csv",
    ]);
    assert_eq!(a.status.code(), Some(0));
    let b = beid(&[
        "census",
        "--max-n",
        "6",
        "--bipartite-only",
        "--format",
        "csv",
        "--jobs",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("n,graph6,bipartite,unmixed"));
    assert_eq!(lines.count(), 1 + 1 + 1 + 3 + 5 + 17);
}

#[test]
fn census_finds_smallest_unmixed_not_cm() {
    let v = json(&beid(&[
        "census",
        "--max-n",
        "7",
        "--bipartite-only",
        "--format",
        "json",
        "--jobs",
        "2",
    ]));
    let bad: Vec<&serde_json::Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["unmixed"] == true && r["dual_connected"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["n"], 7);
    let g = graph6::decode(bad[0]["graph6"].as_str().unwrap()).unwrap();
    assert!(is_isomorphic(&g, &make_m(4, false).unwrap()));
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn census_reads_graph6_stream_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let stream = format!(
        "{}\n\n{}\n",
        graph6::encode(&make_f(3).unwrap()),
        graph6::encode(&make_m(4, true).unwrap())
    );
    let o = beid_stdin(
        &[
            "census",
            "--input",
            "-",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ],
        &stream,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["certified"], true);
    assert_eq!(rows[1]["certified"], false);
}

#[test]
fn census_respects_size_guard() {
    let o = Command::new(env!("CARGO_BIN_EXE_beid"))
        .args(["census", "--max-n", "9"])
        .env_remove("BEID_GUARD_N")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
