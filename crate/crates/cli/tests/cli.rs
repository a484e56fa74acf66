use std::io::Write;
use std::process::{Command, Output};

fn gac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gac"))
        .args(args)
        .env_remove("GAC_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn single_line_stderr(out: &Output) -> String {
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "stderr: {err}");
    err
}

#[test]
fn vectors_of_named_graphs() {
    let out = gac(&["vectors", "--graph", "path:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["f"], serde_json::json!([5, 5, 1]));
    assert_eq!(v["h"], serde_json::json!([1, 3, 1]));
    assert_eq!(v["g"], serde_json::json!([1, 2]));
    assert_eq!(v["gamma"], serde_json::json!([1, 1]));
    assert_eq!(v["facets"], 5);
    assert_eq!(v["flag"], true);

    let v = json(&gac(&["vectors", "--graph", "cycle:4"]));
    assert_eq!(v["h"], serde_json::json!([1, 9, 9, 1]));
    assert_eq!(v["gamma"], serde_json::json!([1, 6]));

    let v = json(&gac(&["vectors", "--graph", "complete:3", "--proper-faces-only"]));
    assert_eq!(v["h"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["f"], serde_json::json!([6, 6]));
}

#[test]
fn vectors_from_files() {
    let dir = std::env::temp_dir().join(format!("gac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let graph = dir.join("square.json");
    std::fs::write(&graph, r#"{"n": 4, "edges": [[1,2],[2,3],[3,4],[4,1]]}"#).unwrap();
    let out = gac(&["vectors", "--graph", graph.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "h,1,9,9,1"));

    let bset = dir.join("segment.txt");
    let mut file = std::fs::File::create(&bset).unwrap();
    writeln!(file, "# interval\nground 2\n1\n2\n1,2").unwrap();
    let v = json(&gac(&["vectors", "--building-set", bset.to_str().unwrap()]));
    assert_eq!(v["f"], serde_json::json!([2, 1]));

    let split = dir.join("split.txt");
    std::fs::write(&split, "ground 2\n1\n2\n").unwrap();
    let out = gac(&["vectors", "--building-set", split.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    single_line_stderr(&out);

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn family_tables() {
    let out = gac(&["family", "--name", "pe", "--max-n", "4", "--vector", "h"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "n,h_0,h_1,h_2,h_3,h_4\n0,1,,,,\n1,1,1,,,\n2,1,4,1,,\n3,1,11,11,1,\n4,1,26,66,26,1\n"
    );

    let v = json(&gac(&["family", "--name", "as", "--max-n", "3", "--vector", "gamma", "--format", "json"]));
    let rows: Vec<_> = v["rows"].as_array().unwrap().iter().map(|r| r["entries"].clone()).collect();
    assert_eq!(serde_json::Value::Array(rows), serde_json::json!([[1], [1], [1, 1], [1, 3]]));

    let v = json(&gac(&["family", "--name", "st", "--max-n", "3", "--format", "json"]));
    assert_eq!(v["rows"][3]["entries"], serde_json::json!([1, 7, 7, 1]));
}

#[test]
fn verify_and_identity() {
    let out = gac(&["verify", "--suite", "tree", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checked"], 1296);
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"], serde_json::json!([]));

    let v = json(&gac(&["verify", "--suite", "connected", "--m", "4", "--jobs", "2"]));
    assert_eq!(v["checked"], 38);
    assert_eq!(v["pass"], true);

    let v = json(&gac(&["verify", "--suite", "product"]));
    assert_eq!(v["pass"], true);

    let out = gac(&["identity", "--id", "cy_relation", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);
}

#[test]
fn verify_output_is_reproducible() {
    let args = ["verify", "--suite", "hamiltonian", "--m", "5", "--no-timing"];
    assert_eq!(gac(&args).stdout, gac(&args).stdout);
    let one = Command::new(env!("CARGO_BIN_EXE_gac"))
        .args(args)
        .env("GAC_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, gac(&args).stdout);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["vectors", "--graph", "blob:3"], 2),
        (&["vectors"], 2),
        (&["family", "--name", "zz", "--max-n", "3"], 2),
        (&["verify", "--suite", "nope", "--m", "3"], 2),
        (&["family", "--name", "pe", "--max-n", "13"], 4),
        (&["verify", "--suite", "connected", "--m", "9"], 4),
        (&["identity", "--id", "pe_ode", "--order", "31"], 4),
    ];
    for (args, code) in cases {
        let out = gac(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        single_line_stderr(&out);
        assert!(out.stdout.is_empty());
    }
}
