use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const EDGE: &str = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;
const EDGELESS2: &str = r#"{"vertices":["a","b"],"edges":[]}"#;
const C5: &str = r#"{"vertices":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"],["d","e"],["e","a"]]}"#;
const P3: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;
const POINT: &str = r#"{"vertices":["a"],"edges":[]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raag-embed"))
        .args(args)
        .env_remove("RAAG_EMBED_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn embed(dir: &Path, graph: &str, name: &str) -> String {
    let out = dir.join(name).to_str().unwrap().to_string();
    let o = run(&["embed", "--inline", graph, "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn reduce_examples() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.json", EDGE);
    let edgeless = write(dir.path(), "edgeless2.json", EDGELESS2);

    let o = run(&["reduce", "--graph", &edge, "--word", "a b a^-1"]);
    assert_eq!(stdout(&o), "a b a^-1 (len 3, supp {a,b})\n");
    let o = run(&["reduce", "--word", "a a^-1"]);
    assert_eq!(stdout(&o), "ε (len 0)\n");
    let o = run(&["reduce", "--graph", &edgeless, "--word", "b a b^-1"]);
    assert!(stdout(&o).starts_with("a (len 1"), "{}", stdout(&o));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["reduce", "--inline", EDGE, "--word", "a q"],
        vec!["reduce", "--inline", EDGE, "--word", "a^x"],
        vec!["embed", "--inline", "{not json"],
        vec!["embed", "--inline", r#"{"vertices":["a","a"],"edges":[]}"#],
        vec!["embed", "--graph", "/nonexistent/graph.json"],
        vec!["verify", "--inline", EDGE, "--depth", "-1"],
        vec!["braid", "--inline", EDGE, "--format", "png"],
        vec!["embed"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn embed_small_graphs() {
    let o = run(&["embed", "--inline", POINT]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["tree"]["vertices"].as_array().unwrap().len(), 1);

    let o = run(&["embed", "--inline", EDGELESS2]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["tree"]["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(cert["tree"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn pipeline_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = embed(dir.path(), C5, "a.json");
    let b = embed(dir.path(), C5, "b.json");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let v1 = run(&["verify", "--graph", &a, "--format", "json", "--jobs", "1"]);
    let v4 = run(&["verify", "--graph", &b, "--format", "json", "--jobs", "4"]);
    assert_eq!(v1.status.code(), Some(0));
    assert_eq!(v1.stdout, v4.stdout);
    let report: serde_json::Value = serde_json::from_slice(&v1.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["config"]["seed"], 42);

    for f in ["json", "dot", "svg"] {
        let x = run(&["braid", "--graph", &a, "--format", f]);
        let y = run(&["braid", "--graph", &b, "--format", f]);
        assert_eq!(x.status.code(), Some(0));
        assert_eq!(x.stdout, y.stdout);
    }
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_raag-embed"))
        .args(["verify", "--inline", P3, "--samples", "50"])
        .env("RAAG_EMBED_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_raag-embed"))
        .args(["verify", "--inline", P3])
        .env("RAAG_EMBED_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tree_source_verifies() {
    let o = run(&["verify", "--inline", P3]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().contains("PASS"));
}

#[test]
fn tampered_certificate_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = embed(dir.path(), C5, "c5.json");
    let mut cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // close a cycle in the tree
    let verts = cert["tree"]["vertices"].as_array().unwrap().clone();
    let (first, last) = (verts[0].clone(), verts[verts.len() - 1].clone());
    let edges = cert["tree"]["edges"].as_array_mut().unwrap();
    let extra = serde_json::json!([first, last]);
    assert!(!edges.contains(&extra));
    edges.push(extra);
    let bad = write(dir.path(), "bad.json", &cert.to_string());

    let o = run(&["verify", "--graph", &bad, "--samples", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let table = stdout(&o);
    let structure = table.lines().find(|l| l.starts_with("structure")).unwrap();
    assert!(structure.contains("FAIL") && structure.contains("not a tree"), "{structure}");
    assert_eq!(run(&["braid", "--graph", &bad]).status.code(), Some(1));
}

#[test]
fn braid_puncture_counts() {
    // a single vertex embeds in the one-vertex tree, a path in itself
    for (graph, n) in [(POINT, 6), (P3, 14)] {
        let o = run(&["braid", "--inline", graph, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let cfg: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(cfg["punctures"].as_array().unwrap().len(), n);
        let table = stdout(&run(&["braid", "--inline", graph]));
        assert!(table.contains(&format!("n = {n} ")), "{table}");
    }
}

#[test]
fn svg_and_dot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cert = embed(dir.path(), C5, "c5.json");
    let o = run(&["braid", "--graph", &cert, "--format", "svg"]);
    let svg = stdout(&o);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let punctures = doc
        .descendants()
        .filter(|n| n.attribute("class").is_some_and(|c| c.split(' ').any(|w| w == "puncture")))
        .count();
    assert_eq!(punctures, 90);

    let dot = stdout(&run(&["render", "--graph", &cert, "--format", "dot"]));
    assert!(dot.starts_with("graph T {"));
    assert_eq!(dot.matches(" -- ").count(), 21);
}

#[test]
fn render_reads_saved_configurations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cfg.json").to_str().unwrap().to_string();
    let o = run(&["braid", "--inline", P3, "--format", "json", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let direct = run(&["render", "--inline", P3, "--format", "svg"]);
    let saved = run(&["render", "--graph", &out, "--format", "svg"]);
    assert_eq!(saved.status.code(), Some(0));
    assert_eq!(direct.stdout, saved.stdout);
}
