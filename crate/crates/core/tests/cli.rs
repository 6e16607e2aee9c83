use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const FOUR_VERTEX: &str = r#"{
  "vertices": ["v1", "v2", "v3", "v4"],
  "hyperedges": [
    {"id": "h1", "inputs": ["v1", "v2"], "outputs": ["v3"]},
    {"id": "h2", "inputs": ["v1"], "outputs": ["v4"]}
  ]
}"#;

const BRANCHING: &str = r#"{
  "vertices": ["v1", "v2", "v3", "v4"],
  "hyperedges": [
    {"id": "h1", "inputs": ["v1"], "outputs": ["v2"]},
    {"id": "h2", "inputs": ["v3"], "outputs": ["v1", "v3"]},
    {"id": "h3", "inputs": ["v1", "v2", "v4"], "outputs": ["v4"]}
  ]
}"#;

const CATALYST: &str = r#"{
  "hyperedges": [
    {
      "id": "h",
      "inputs": [
        "v1",
        "v2",
        "v3"
      ],
      "outputs": [
        "v3"
      ]
    }
  ],
  "vertices": [
    "v1",
    "v2",
    "v3"
  ]
}
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperlap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn spectrum_of_four_vertex_example() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.json", FOUR_VERTEX);
    let o = run(&["spectrum", f.to_str().unwrap(), "--operator", "hyperedge"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "hyperedge: 2.70710678, 1.29289322; m_H = 0");

    let o = run(&["spectrum", f.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spectra"][0]["operator"], "vertex");
    assert_eq!(v["spectra"][0]["zero_multiplicity"], 2);
    let mu = v["spectra"][1]["eigenvalues"][0].as_f64().unwrap();
    assert!((mu - (2.0 + 0.5f64.sqrt())).abs() < 1e-12);
}

#[test]
fn spectrum_of_all_catalyst_and_empty() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cat.json", r#"{"vertices":["a","b"],"hyperedges":[{"id":"h","inputs":["a","b"],"outputs":["a","b"]}]}"#);
    let o = run(&["spectrum", f.to_str().unwrap(), "--operator", "hyperedge"]);
    assert_eq!(stdout(&o).trim(), "hyperedge: 0; m_H = 1");
    let e = write(&dir, "empty.json", r#"{"vertices":[],"hyperedges":[]}"#);
    let o = run(&["spectrum", e.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vertex: ; m_V = 0\nhyperedge: ; m_H = 0\n");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"vertices":["a"],"hyperedges":[{"id":"h","inputs":["a"],"outputs":[]}]}"#);
    let o = run(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).to_lowercase().contains("output"));
    let syntax = write(&dir, "syn.json", "{\n  \"vertices\": [,]\n}");
    let o = run(&["report", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["verify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["random", "--vertices", "1", "--hyperedges", "2", "--seed", "0", "--family", "bipartite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_branching() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "b.json", BRANCHING);
    let o = run(&["report", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m_v"], 2);
    assert_eq!(v["m_h"], 1);
    assert_eq!(v["closed_systems"]["systems"], serde_json::json!([]));
    assert_eq!(v["checks"][0]["name"], "multiplicity-identity");
    assert_eq!(v["checks"][0]["lhs"], 1.0);
    assert_eq!(v["checks"][0]["rhs"], 1.0);
    assert_eq!(v["checks"][0]["passed"], true);

    let text = stdout(&run(&["report", f.to_str().unwrap()]));
    assert!(text.contains("m_V = 2, m_H = 1"));
    assert!(text.contains("closed systems: 0"));
}

#[test]
fn report_honours_cap_env() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "b.json", BRANCHING);
    let o = bin().args(["report", f.to_str().unwrap(), "--json"]).env("HYPERLAP_CLOSED_SYSTEM_CAP", "2").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed_systems"]["enumerated"], false);
    assert_eq!(v["closed_systems"]["cap"], 2);
    assert!(v["closed_systems"]["notice"].as_str().unwrap().contains("cap"));
    let o = bin().args(["report", f.to_str().unwrap()]).env("HYPERLAP_CLOSED_SYSTEM_CAP", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_is_deterministic_and_valid() {
    let args = ["random", "--vertices", "5", "--hyperedges", "4", "--seed", "7", "--family", "generic"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "r.json", &stdout(&a));
    assert_eq!(run(&["verify", f.to_str().unwrap()]).status.code(), Some(0));

    let o = run(&["random", "--vertices", "6", "--hyperedges", "5", "--seed", "3", "--family", "balanced"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for h in v["hyperedges"].as_array().unwrap() {
        assert_eq!(h["inputs"].as_array().unwrap().len(), h["outputs"].as_array().unwrap().len());
    }
}

#[test]
fn verify_seeded_instances() {
    let dir = TempDir::new().unwrap();
    for (seed, family) in ["generic", "bipartite", "balanced", "all-catalyst", "graph"].iter().enumerate() {
        let doc = run(&["random", "--vertices", "6", "--hyperedges", "5", "--seed", &seed.to_string(), "--family", family]);
        let f = write(&dir, &format!("{family}.json"), &stdout(&doc));
        let o = run(&["verify", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{family}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn flip_fixed_point_and_invariance() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cat.json", CATALYST);
    let o = run(&["flip", f.to_str().unwrap(), "--vertex", "v3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), CATALYST);

    let g = write(&dir, "g.json", FOUR_VERTEX);
    let flipped = run(&["flip", g.to_str().unwrap(), "--vertex", "v1"]);
    let ff = write(&dir, "flipped.json", &stdout(&flipped));
    let before: serde_json::Value = serde_json::from_slice(&run(&["spectrum", g.to_str().unwrap(), "--json"]).stdout).unwrap();
    let after = run(&["spectrum", ff.to_str().unwrap(), "--json", "--relaxed"]);
    assert_eq!(after.status.code(), Some(0));
    let after: serde_json::Value = serde_json::from_slice(&after.stdout).unwrap();
    for k in 0..2 {
        let a = before["spectra"][k]["eigenvalues"].as_array().unwrap();
        let b = after["spectra"][k]["eigenvalues"].as_array().unwrap();
        for (x, y) in a.iter().zip(b) {
            assert!((x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= 1e-9);
        }
    }
    assert_eq!(run(&["flip", g.to_str().unwrap(), "--vertex", "zz"]).status.code(), Some(2));
}

#[test]
fn examples_table_passes() {
    let o = run(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("bipartite-four-vertex") && l.contains("mu1^H") && l.contains("2.7071067812")));
    assert!(!text.contains("FAIL"));
    let o = run(&["examples", "--json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
}
