use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn segcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segcover")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn cover_of_box_with_splitter() {
    let out = segcover(&["cover", &fixture("box_split.json"), "--mode", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"format": 1, "mode": "all", "size": 1, "segments": [0]}));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size 1"));
}

#[test]
fn kernel_on_three_disjoint_boxes_is_infeasible() {
    let out = segcover(&["kernel", &fixture("three_boxes.json"), "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert_eq!(doc["outcome"], "infeasible");
    assert_eq!(doc["stage"], "kernel");
    assert_eq!(doc["k"], 1);

    let out = segcover(&["kernel", &fixture("three_boxes.json"), "-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["outcome"], "kernel");
}

#[test]
fn bounded_cover_failure_names_k_and_stage() {
    let out = segcover(&["cover", &fixture("three_boxes.json"), "--mode", "rect", "-k", "2", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert_eq!(doc["outcome"], "no-cover");
    assert_eq!(doc["k"], 2);
    assert!(["kernel", "search"].contains(&doc["stage"].as_str().unwrap()));
    assert!(out.stderr.is_empty());

    let out = segcover(&["cover", &fixture("three_boxes.json"), "--mode", "rect", "-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["size"], 3);
}

#[test]
fn subdivision_fixtures() {
    for (name, size, evaluations) in [("leaf_tree.json", 1, 16), ("four_cells_tree.json", 2, 112)] {
        let out = segcover(&["subdiv", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let doc = stdout_json(&out);
        assert_eq!(doc["size"], size, "{name}");
        assert_eq!(doc["evaluations"], evaluations, "{name}");
    }
}

#[test]
fn cells_and_oracle_agree() {
    let cells = stdout_json(&segcover(&["cells", &fixture("grid2x2.json")]));
    let list = cells["cells"].as_array().unwrap();
    assert_eq!(list.len(), 5);
    assert_eq!(list.iter().filter(|c| c["rectangular"] == true).count(), 4);
    let oracle = stdout_json(&segcover(&["oracle", &fixture("grid2x2.json"), "--mode", "rect"]));
    assert_eq!(oracle["cells"], 5);
}

#[test]
fn compile3sat_reports_budget_and_layout() {
    for (variant, budget) in [("all", 9), ("rect", 10)] {
        let out = segcover(&["compile3sat", &fixture("one_clause.json"), "--variant", variant]);
        assert_eq!(out.status.code(), Some(0));
        let doc = stdout_json(&out);
        assert_eq!(doc["budget"], budget);
        assert_eq!(doc["layout"]["variables"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn input_errors_exit_one() {
    let out = segcover(&["cells", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));

    let out = segcover(&["cells", "/nonexistent/instance.json", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["code"], "read");

    let out = segcover(&["cover", &fixture("box.json"), "--mode", "some"]);
    assert_eq!(out.status.code(), Some(1));

    let out = segcover(&["subdiv", &fixture("box.json"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["code"], "parse");
}

#[test]
fn svg_marks_segments_and_rectangles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.svg");
    let out = segcover(&["cover", &fixture("box.json"), "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<line").count(), 4);
    assert_eq!(svg.matches("<rect class=\"cell\"").count(), 1);
    assert!(svg.contains("class=\"chosen\""));
}

#[test]
fn gen_is_seeded() {
    let a = segcover(&["gen", "instance", "--seed", "3"]);
    let b = segcover(&["gen", "instance", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["format"], 1);
    let t = segcover(&["gen", "tree", "--seed", "3"]);
    assert!(stdout_json(&t).get("root").is_some());
}
