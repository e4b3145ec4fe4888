use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use temporal_motifs::synth::uniform_edges;

fn tmotif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmotif")).args(args).output().expect("binary runs")
}

fn write_graph(dir: &Path, name: &str, edges: &[(u32, u32, i64)]) -> String {
    let path = dir.join(name);
    let body: String = edges.iter().map(|(u, v, t)| format!("{u} {v} {t}\n")).collect();
    fs::write(&path, format!("# src dst t\n{body}")).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn both_mode_on_a_single_path() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "g1.txt", &[(1, 2, 10), (2, 3, 20), (3, 4, 30)]);
    let motif = dir.path().join("path.motif");
    fs::write(&motif, "0 1\n1 2\n2 3\n").unwrap();
    let out = tmotif(&[
        "run", "--graph", &graph, "--motif", motif.to_str().unwrap(), "--delta", "25", "--mode", "both", "--samples", "100",
    ]);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["estimate"], 1.0);
    assert_eq!(v["exact"], 1);
    assert_eq!(v["relative_error"], 0.0);
    assert_eq!(v["W_delta"], 1);
    assert_eq!(v["sum_X"], 100);
    assert_eq!(v["k"], 100);
    assert_eq!(v["graph"]["m"], 3);
    assert_eq!(v["graph"]["time_span"], 20);
    assert!(v.get("threads").is_none() && v.get("timings").is_none());
}

#[test]
fn json_is_identical_across_threads_and_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "g.txt", &uniform_edges(30, 200, 500, 3));
    let run = |threads: &str| {
        let out = tmotif(&[
            "run", "--graph", &graph, "--motif", "M4-0", "--delta", "2m", "--samples", "20000", "--seed", "7", "--threads",
            threads,
        ]);
        assert!(out.status.success());
        out.stdout
    };
    let first = run("1");
    assert_eq!(run("1"), first);
    for t in ["2", "4", "8"] {
        assert_eq!(run(t), first, "threads {t}");
    }
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["delta"], 120);
}

#[test]
fn diagnostics_add_threads_and_timings() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "g.txt", &uniform_edges(10, 100, 100, 1));
    let v = json(&tmotif(&[
        "run", "--graph", &graph, "--motif", "M3-0", "--delta", "30", "--threads", "2", "--diagnostics", "--mode", "both",
    ]));
    assert_eq!(v["threads"], 2);
    assert!(v["timings"]["sampling_s"].is_number());
    assert!(v["timings"]["exact_s"].is_number());
}

#[test]
fn text_output_and_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    fs::write(&path, "0,1,1\n1,2,2\n2,0,3\n").unwrap();
    let out = tmotif(&[
        "run", "--graph", path.to_str().unwrap(), "--format", "csv", "--motif", "M3-0", "--delta", "5", "--mode", "exact",
        "--output", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exact: 1\n"), "{text}");
    assert!(text.contains("graph.m: 3\n"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "g.txt", &uniform_edges(8, 300, 50, 2));
    let code = |args: &[&str]| tmotif(args).status.code().unwrap();
    assert_eq!(code(&["run", "--graph", &graph, "--motif", "M4-0", "--delta", "10", "--samples", "0"]), 1);
    assert_eq!(code(&["run", "--graph", &graph, "--motif", "no-such-motif", "--delta", "10"]), 1);
    assert_eq!(code(&["run", "--graph", &graph, "--motif", "M4-0", "--delta", "-1"]), 1);
    assert_eq!(code(&["run", "--motif", "M4-0", "--delta", "10"]), 1);
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&["run", "--graph", missing.to_str().unwrap(), "--motif", "M4-0", "--delta", "10"]), 2);
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2 3\nx y z\n").unwrap();
    let out = tmotif(&["run", "--graph", bad.to_str().unwrap(), "--motif", "M4-0", "--delta", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        code(&["run", "--graph", &graph, "--motif", "M4-0", "--delta", "50", "--mode", "exact", "--cap", "5"]),
        3
    );
}

#[test]
fn bench_emits_one_row_per_repetition() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "g.txt", &uniform_edges(20, 500, 300, 4));
    let out = tmotif(&[
        "bench", "--graph", &graph, "--motif", "M4-0", "--delta", "60", "--samples", "5000", "--thread-list", "1,2,4", "--reps",
        "5", "--bench-output", "json",
    ]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    let estimates: Vec<&Value> = rows.iter().map(|r| &r["estimate"]).collect();
    assert!(estimates.windows(2).all(|w| w[0] == w[1]));
    let csv = tmotif(&["bench", "--graph", &graph, "--motif", "M4-0", "--delta", "60", "--samples", "100", "--reps", "2"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 1 + 3 * 2);
}

#[test]
fn presets_are_listed() {
    let out = tmotif(&["presets"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["M3-0", "M3-1", "M4-0", "M4-1", "M4-2", "M4-3", "M4-4", "M4-5"] {
        assert!(text.contains(name), "{text}");
    }
}
