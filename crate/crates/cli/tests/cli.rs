use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fairwire::instances::parse_instance;
use fairwire::model::Instance;
use fairwire::model::Node::{Agent, Station};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn fairwire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairwire")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn golden_file_parses_to_worked_example() {
    let doc = parse_instance(&fs::read_to_string(data("worked_example.json")).unwrap()).unwrap();
    let expected =
        Instance::new(vec![2, 2, 2], 4, vec![(Station, Agent(0)), (Agent(0), Agent(1)), (Station, Agent(2))]).unwrap();
    assert_eq!(doc.instance, expected);
}

#[test]
fn solve_exact_on_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let out = fairwire(&[
        "solve",
        "-i",
        path(&data("worked_example.json")),
        "--exact",
        "-o",
        path(&plan),
        "--format",
        "json",
    ]);
    let report = json(&out);
    assert_eq!(report["sorted_utilities"], serde_json::json!(["1/2", "1/2", "1/1"]));
    assert_eq!(report["alpha"], "1/1");
    assert_eq!(report["oracle"], "exact");
    let verify = fairwire(&["verify", "-i", path(&data("worked_example.json")), "-p", path(&plan)]);
    assert!(verify.status.success(), "{}", stdout(&verify));
}

#[test]
fn human_report_lists_plan_and_utilities() {
    let out = fairwire(&["solve", "-i", path(&data("worked_example.json")), "--oracle", "exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sorted utilities: [1/2, 1/2, 1/1]"), "{text}");
    assert!(text.contains("stages:"));
}

#[test]
fn egalitarian_on_partition_star() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("star.json");
    assert!(fairwire(&["gen", "--partition", "2,2,2,2", "-o", path(&file)]).status.success());
    let doc = parse_instance(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc.instance.supply(), 4);
    assert!(doc.instance.tree().station_children().len() == 4);
    let report = json(&fairwire(&["solve", "-i", path(&file), "--mode", "egalitarian", "--exact", "--format", "json"]));
    assert_eq!(report["min_utility"], "1/2");
}

#[test]
fn partition_with_odd_total_is_flagged() {
    let out = fairwire(&["gen", "--partition", "1,2"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("no equal split"));
}

#[test]
fn malformed_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, "{\"version\": 1,\n \"supply\": -3, \"agents\": [], \"edges\": []}").unwrap();
    let out = fairwire(&["solve", "-i", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("supply"), "{}", stderr(&out));
}

#[test]
fn cycle_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cycle.json");
    fs::write(
        &file,
        r#"{"version":1,"supply":3,"agents":[{"id":1,"demand":1},{"id":2,"demand":1}],"edges":[["s",1],[1,2],[2,"s"]]}"#,
    )
    .unwrap();
    let out = fairwire(&["solve", "-i", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a tree"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = fairwire(&["verify", "-i", "/nonexistent/instance.json", "-p", "/nonexistent/plan.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_violation_classes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("geographic", r#"[{"members":[1],"time":"2/3"},{"members":[2,3],"time":"1/3"}]"#),
        ("sum", r#"[{"members":[1,2],"time":"0.9"}]"#),
    ];
    for (class, entries) in cases {
        let plan = dir.path().join("plan.json");
        fs::write(&plan, format!(r#"{{"version":1,"entries":{entries}}}"#)).unwrap();
        let out =
            fairwire(&["verify", "-i", path(&data("worked_example.json")), "-p", path(&plan), "--format", "json"]);
        assert_eq!(out.status.code(), Some(1));
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["ok"], false);
        assert_eq!(report["violations"][0]["class"], class);
    }
    let ok =
        fairwire(&["verify", "-i", path(&data("worked_example.json")), "-p", path(&data("worked_example_plan.json"))]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn random_generation_is_deterministic() {
    let a = fairwire(&["gen", "--random", "--n", "10", "--seed", "7"]);
    let b = fairwire(&["gen", "--random", "--n", "10", "--seed", "7"]);
    let c = fairwire(&["gen", "--random", "--n", "10", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let doc = parse_instance(&stdout(&a)).unwrap();
    assert!(doc.instance.is_oversubscribed());
}

#[test]
fn knapsack_exact_and_rounded() {
    let file = data("star_knapsack.json");
    let exact = json(&fairwire(&["knapsack", "-i", path(&file), "--format", "json"]));
    assert_eq!(exact["members"], serde_json::json!([2, 3]));
    assert_eq!(exact["value"], "22/1");
    assert_eq!(exact["path"], "exact");
    let rounded = json(&fairwire(&["knapsack", "-i", path(&file), "--eps", "0.25", "--format", "json"]));
    assert_eq!(rounded["path"], "rounded");
    let v = fairwire::ratio::parse_rational(rounded["value"].as_str().unwrap()).unwrap();
    assert!(v >= fairwire::ratio::frac(33, 2));
}

#[test]
fn knapsack_with_no_supply_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("zero.json");
    let text = fs::read_to_string(data("star_knapsack.json")).unwrap().replace("\"supply\": 5", "\"supply\": 0");
    fs::write(&file, text).unwrap();
    let report = json(&fairwire(&["knapsack", "-i", path(&file), "--format", "json"]));
    assert_eq!(report["members"], serde_json::json!([]));
    assert_eq!(report["value"], "0/1");
}

#[test]
fn knapsack_needs_values() {
    let out = fairwire(&["knapsack", "-i", path(&data("worked_example.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_stays_under_the_cell_bound() {
    let report = json(&fairwire(&["bench", "--n", "50", "--eps", "0.1", "--format", "json"]));
    let run = &report["runs"][0];
    assert_eq!(run["n"], 50);
    assert_eq!(run["cell_bound"], (50u64 * (25_000 + 1)).to_string());
    assert!(run["cells"].as_u64().unwrap() <= 50 * 25_001);
}

#[test]
fn bad_epsilon_is_an_input_error() {
    let out = fairwire(&["solve", "-i", path(&data("worked_example.json")), "--eps", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}
