//! End-to-end tests of the regramsey binary: output shapes, formats, and
//! the documented exit codes (0 ok, 1 infeasible/unverified, 2 construction
//! failure, 3 I/O error).

use regramsey::graph::named::cycle;
use regramsey::io::{parse_auto, write_edge_list};
use regramsey::Graph;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_regramsey"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    p
}

#[test]
fn construct_emits_parseable_graph6() {
    let out = run(&["construct", "--n", "30", "--seed", "5"]);
    assert!(out.status.success());
    let g = parse_auto(&stdout_of(&out)).unwrap();
    assert_eq!(g.n(), 30);
    assert!(g.is_regular().is_some());
    assert!(g.is_triangle_free());
}

#[test]
fn construct_writes_files_and_certificate() {
    let graph_path = tmp("c40.edges");
    let cert_path = tmp("c40.json");
    let out = run(&[
        "construct",
        "--n",
        "40",
        "--seed",
        "2",
        "--format",
        "edges",
        "--out",
        graph_path.to_str().unwrap(),
        "--certificate",
        cert_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "", "graph goes to the file, not stdout");

    let g = parse_auto(&std::fs::read_to_string(&graph_path).unwrap()).unwrap();
    assert_eq!(g.n(), 40);

    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["n"], 40);
    assert_eq!(cert["regular"], true);
    assert_eq!(cert["triangle_free"], true);
    assert_eq!(cert["params"]["seed"], 2);
}

#[test]
fn construct_is_deterministic() {
    let a = run(&["construct", "--n", "33", "--seed", "9"]);
    let b = run(&["construct", "--n", "33", "--seed", "9"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn construct_rejects_order_zero() {
    let out = run(&["construct", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realize_feasible_prints_position_pairs() {
    let out = run(&["realize", "--left", "2,1,1", "--right", "2,2"]);
    assert!(out.status.success());
    let mut left_deg = [0usize; 3];
    let mut right_deg = [0usize; 2];
    let mut seen = std::collections::BTreeSet::new();
    for line in stdout_of(&out).lines() {
        let mut it = line.split_whitespace();
        let u: usize = it.next().unwrap().parse().unwrap();
        let v: usize = it.next().unwrap().parse().unwrap();
        assert!(seen.insert((u, v)), "duplicate pair {u} {v}");
        left_deg[u] += 1;
        right_deg[v] += 1;
    }
    assert_eq!(left_deg, [2, 1, 1]);
    assert_eq!(right_deg, [2, 2]);
}

#[test]
fn realize_reports_sum_mismatch_as_witness_zero() {
    let out = run(&["realize", "--left", "3,3", "--right", "2,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_of(&out).trim(), "INFEASIBLE s=0");
}

#[test]
fn realize_reports_violated_prefix() {
    // Equal sums but the single right vertex would need degree 9 > 3.
    let out = run(&["realize", "--left", "3,3,3", "--right", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_of(&out).trim(), "INFEASIBLE s=1");
}

#[test]
fn process_writes_trajectory_csv() {
    let stats = tmp("traj.csv");
    let out = run(&[
        "process",
        "--n",
        "14",
        "--seed",
        "3",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let g = parse_auto(&stdout_of(&out)).unwrap();
    assert_eq!(g.n(), 14);
    assert!(g.is_triangle_free());

    let csv = std::fs::read_to_string(&stats).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,max_deg,min_deg,open_pairs"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), g.edge_count(), "one row per added edge");
    assert!(
        rows.last().unwrap().ends_with(",0"),
        "no open pairs at the end"
    );
}

#[test]
fn color_emits_vertex_color_lines() {
    let path = tmp("c9.edges");
    std::fs::write(&path, write_edge_list(&cycle(9))).unwrap();
    let out = run(&["color", "--in", path.to_str().unwrap(), "--colors", "3"]);
    assert!(out.status.success());
    let g = cycle(9);
    let mut colors = vec![usize::MAX; 9];
    for line in stdout_of(&out).lines() {
        let mut it = line.split_whitespace();
        let v: usize = it.next().unwrap().parse().unwrap();
        colors[v] = it.next().unwrap().parse().unwrap();
    }
    let mut sizes = [0usize; 3];
    for &c in &colors {
        sizes[c] += 1;
    }
    assert_eq!(sizes, [3, 3, 3]);
    for e in g.edges() {
        assert_ne!(colors[e.u()], colors[e.v()]);
    }
}

#[test]
fn color_failure_is_exit_two() {
    let path = tmp("k2.edges");
    std::fs::write(&path, write_edge_list(&cycle(3))).unwrap();
    let out = run(&["color", "--in", path.to_str().unwrap(), "--colors", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn regularize_roundtrip() {
    let input = tmp("c9_in.edges");
    let output = tmp("c9_doubled.g6");
    std::fs::write(&input, write_edge_list(&cycle(9))).unwrap();
    let out = run(&[
        "regularize",
        "--in",
        input.to_str().unwrap(),
        "--d",
        "1",
        "--seed",
        "4",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let g = parse_auto(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(g.n(), 18);
    assert_eq!(g.is_regular(), Some(3));
    assert!(g.is_triangle_free());
}

#[test]
fn hkr_and_verify_agree() {
    let path = tmp("h15_4.g6");
    let out = run(&[
        "hkr",
        "--k",
        "15",
        "--r",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let verify = run(&["verify", "--in", path.to_str().unwrap()]);
    assert!(verify.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout_of(&verify)).unwrap();
    for key in [
        "n",
        "r",
        "regular",
        "triangle_free",
        "alpha_lower",
        "alpha_upper",
        "alpha_exact",
        "ratio_lower",
        "ratio_upper",
        "witness",
        "params",
    ] {
        assert!(cert.get(key).is_some(), "missing certificate key {key}");
    }
    assert_eq!(cert["n"], 15);
    assert_eq!(cert["r"], 4);
}

#[test]
fn verify_fails_on_irregular_or_triangles() {
    let irregular = tmp("p3.edges");
    std::fs::write(&irregular, "# n=3\n0 1\n1 2\n").unwrap();
    let out = run(&["verify", "--in", irregular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let cert: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(cert["regular"], false);
    assert_eq!(cert["r"], serde_json::Value::Null);

    let triangle = tmp("k3.edges");
    std::fs::write(&triangle, write_edge_list(&cycle(3))).unwrap();
    let out = run(&["verify", "--in", triangle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_is_exit_three() {
    let out = run(&["verify", "--in", tmp("does_not_exist.g6").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "color",
        "--in",
        tmp("also_missing").to_str().unwrap(),
        "--colors",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn hkr_rejects_bad_parameters_with_exit_two() {
    let out = run(&[
        "hkr",
        "--k",
        "12",
        "--r",
        "2",
        "--out",
        tmp("bad.g6").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "hkr",
        "--k",
        "10",
        "--r",
        "6",
        "--out",
        tmp("bad.g6").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn greedy_alpha_mode_skips_upper_bound() {
    let path = tmp("h25_4.g6");
    run(&[
        "hkr",
        "--k",
        "25",
        "--r",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let out = run(&[
        "verify",
        "--in",
        path.to_str().unwrap(),
        "--alpha",
        "greedy",
    ]);
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(cert["alpha_exact"], false);
    assert_eq!(cert["alpha_upper"], serde_json::Value::Null);
    assert!(cert["alpha_lower"].as_u64().unwrap() >= 1);
}

#[test]
fn graph_module_is_usable_from_integration_tests() {
    // Guards the public surface the other tests lean on.
    let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(g.edge_count(), 2);
}
