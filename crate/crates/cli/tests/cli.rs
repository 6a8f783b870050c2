use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cia")).args(args).output().expect("run cia")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn component_count_for_two_by_three() {
    let o = cia(&["verify", "cor2.7", "--k", "2", "--l", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("7"));
    let o = cia(&["verify", "cor2.7", "--k", "3", "--l", "3", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["components"], 25);
    assert_eq!(v["schema"], "cia/1");
}

#[test]
fn component_table_three_by_three() {
    let o = cia(&["table", "--k", "3", "--l", "3", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["components"], 25);
    let rows: Vec<(u64, u64, String)> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["occurrences"].as_u64().unwrap(),
                r["generators"].as_u64().unwrap(),
                r["representative"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![(1, 54, "I_0".into()), (6, 18, "I_{159}".into()), (18, 21, "I_{126}".into())]
    );
    assert_eq!(v["classes"][0]["dimension"], 14);
    assert_eq!(v["classes"][1]["dimension"], 12);
}

#[test]
fn component_table_lists_the_transversals_in_grid_row_order() {
    let o = cia(&["table", "--k", "2", "--l", "3", "--d", "3"]);
    let text = stdout(&o);
    assert!(text.starts_with("7 prime components"), "{text}");
    assert!(text.contains("type 1: I_{14} I_{16} I_{32} I_{36} I_{52} I_{54}"), "{text}");
}

#[test]
fn exported_basis_imports_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("i14.json");
    let o = cia(&["export", "--ideal", "ex-I14", "--gb", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = cia(&["import", path(&file), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&file).unwrap();
    assert_eq!(stdout(&o).trim_end(), written.trim_end());
    let again = dir.path().join("again.json");
    std::fs::write(&again, stdout(&o)).unwrap();
    let o2 = cia(&["import", path(&again), "--format", "json"]);
    assert_eq!(stdout(&o2), stdout(&o));
}

#[test]
fn hand_written_edge_list_gives_the_listed_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("delta.json");
    std::fs::write(&file, r#"{"n":8,"edges":[[1],[4],[5,6],[5,7],[5,8],[6,7],[6,8],[7,8]]}"#).unwrap();
    let imported = json(&cia(&["import", path(&file), "--d", "3", "--format", "json"]));
    let listed = json(&cia(&["construct", "--ideal", "ex-I14star", "--format", "json"]));
    assert_eq!(listed["generators"].as_array().unwrap().len(), 24);
    assert_eq!(imported["generators"], listed["generators"]);
}

#[test]
fn malformed_input_names_the_offending_entry() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let body = r#"{"d":2,"k":2,"l":2,"field":"QQ","generators":[
        {"terms":[{"c":"1","m":[[1,1]]}]},
        {"terms":[{"c":"1","m":[[9,1]]}]}]}"#;
    std::fs::write(&file, body).unwrap();
    let o = cia(&["import", path(&file)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("generators[1]"), "{err}");

    let edges = dir.path().join("edges.json");
    std::fs::write(&edges, r#"{"n":8,"edges":[[1],[9]]}"#).unwrap();
    let o = cia(&["import", path(&edges)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[9]"));
}

#[test]
fn exit_codes() {
    // Regime violation.
    assert_eq!(cia(&["verify", "lemma3.2", "--k", "4", "--l", "3", "--d", "3"]).status.code(), Some(2));
    // Unknown target.
    assert_eq!(cia(&["verify", "thm9.9"]).status.code(), Some(2));
    // Resource limit.
    assert_eq!(cia(&["gb", "--k", "2", "--l", "3", "--d", "3", "--limit-pairs", "3"]).status.code(), Some(3));
    // Census bound.
    let o = Command::new(env!("CARGO_BIN_EXE_cia"))
        .args(["census", "--k", "2", "--l", "3", "--d", "3", "--q", "2"])
        .env("CIA_POINT_BOUND", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    // Failed verification.
    assert_eq!(cia(&["verify", "ex4.1"]).status.code(), Some(1));
    // Passing verification.
    assert_eq!(cia(&["verify", "lemma3.4", "--k", "2", "--l", "3", "--d", "3"]).status.code(), Some(0));
}

#[test]
fn containment_example_and_file_queries_agree() {
    let o = cia(&["verify", "ex4.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let i14 = dir.path().join("i14.json");
    let star = dir.path().join("star.json");
    let i0 = dir.path().join("i0.json");
    cia(&["export", "--ideal", "ex-I14", "--out", path(&i14)]);
    cia(&["export", "--ideal", "ex-I14star", "--out", path(&star)]);
    cia(&["export", "--ideal", "I0", "--k", "2", "--l", "4", "--d", "3", "--t", "3", "--out", path(&i0)]);
    let q = |outer: &Path, inner: &Path| json(&cia(&["contains", path(outer), path(inner), "--format", "json"]))["contained"].clone();
    assert_eq!(q(&i14, &i0), true);
    assert_eq!(q(&star, &i14), false);
    assert_eq!(q(&i14, &star), false);
}

#[test]
fn census_report_is_json_and_thread_independent() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cia"))
            .args(["verify", "thm2.6", "--k", "2", "--l", "2", "--d", "3", "--q", "2", "--format", "json"])
            .env("CIA_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], "cia/1");
    assert_eq!(v["census"]["missing"], 0);
    assert_eq!(v["census"]["extra"], 0);
}

#[test]
fn dimension_with_witness_face() {
    let o = cia(&["dim", "--ideal", "IS", "--S", "1,5,9", "--k", "3", "--l", "3", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dimension"], 12);
    assert_eq!(v["codimension"], 15);
    assert_eq!(v["witness_is_face"], true);
}

#[test]
fn intersection_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    cia(&["export", "--ideal", "IS", "--S", "1,4", "--k", "2", "--l", "2", "--d", "2", "--out", path(&a)]);
    cia(&["export", "--ideal", "IS", "--S", "2,3", "--k", "2", "--l", "2", "--d", "2", "--out", path(&b)]);
    let o = cia(&["intersect", path(&a), path(&b), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!json(&o)["generators"].as_array().unwrap().is_empty());
}
