use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use linksym::link::LinkingMatrix;
use linksym::tree::LabeledTree;
use linksym::whitten::WhittenElement;

fn linksym(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_linksym"));
    cmd.args(args).env_remove("LINKSYM_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("LINKSYM_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gamma_order_of_one_component() {
    let out = linksym(&["gamma-order", "--n", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["order"], 4);
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn gamma2_has_27_classes() {
    let out = linksym(&["gamma-subgroups", "--n", "2", "--up-to-conjugacy"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["count"], 27);
    let sizes: u64 = r["subgroups"].as_array().unwrap().iter().map(|s| s["class_size"].as_u64().unwrap()).sum();
    assert_eq!(sizes, 35);
}

#[test]
fn hopf_stabilizer_has_order_eight() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "hopf.json", r#"{"n": 2, "lk": [[0, 1], [1, 0]]}"#);
    let out = linksym(&["link-stabilizer", "--input", &input], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stabilizer_order"], 8);
    let elements: Vec<WhittenElement> = serde_json::from_value(r["stabilizer"].clone()).unwrap();
    assert_eq!(elements.len(), 8);
    let lk: LinkingMatrix = serde_json::from_value(r["linking_matrix"].clone()).unwrap();
    assert_eq!(lk, LinkingMatrix::hopf());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["gamma-subgroups", "--n", "3", "--up-to-conjugacy"];
    assert_eq!(linksym(&args, None).stdout, linksym(&args, None).stdout);
}

#[test]
fn cache_hit_matches_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gamma-subgroups", "--n", "2"];
    let fresh = linksym(&args, None);
    let stored = linksym(&args, Some(dir.path()));
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let entry = entries[0].as_ref().unwrap().path();
    let bytes = fs::read(&entry).unwrap();
    let loaded = linksym(&args, Some(dir.path()));
    assert_eq!(fresh.stdout, stored.stdout);
    assert_eq!(fresh.stdout, loaded.stdout);
    assert_eq!(fs::read(&entry).unwrap(), bytes);
    assert!(stderr(&loaded).is_empty());
}

#[test]
fn cache_is_off_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = linksym(&["gamma-subgroups", "--n", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    let flagged = Command::new(env!("CARGO_BIN_EXE_linksym"))
        .args(["--cache-dir", dir.path().to_str().unwrap(), "gamma-subgroups", "--n", "1"])
        .env_remove("LINKSYM_CACHE_DIR")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, out.stdout);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn tampered_cache_is_recomputed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gamma-subgroups", "--n", "2", "--up-to-conjugacy"];
    let first = linksym(&args, Some(dir.path()));
    let entry = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let original = fs::read(&entry).unwrap();
    let mut entry_json: Value = serde_json::from_slice(&original).unwrap();
    let payload = entry_json["payload"].as_str().unwrap().replacen("\"order\":1", "\"order\":3", 1);
    entry_json["payload"] = Value::String(payload);
    fs::write(&entry, serde_json::to_vec(&entry_json).unwrap()).unwrap();

    let second = linksym(&args, Some(dir.path()));
    assert_eq!(second.status.code(), Some(0));
    assert!(stderr(&second).contains("warning"));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read(&entry).unwrap(), original);

    fs::write(&entry, b"not json").unwrap();
    let third = linksym(&args, Some(dir.path()));
    assert!(stderr(&third).contains("warning"));
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(dir.path(), "asym.json", r#"{"n": 2, "lk": [[0, 1], [2, 0]]}"#);
    let cyclic = write(
        dir.path(),
        "cycle.json",
        r#"{"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]], "labels": {"1": 0}}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["gamma-order", "--n", "seven"],
        vec!["gamma-subgroups", "--n", "6"],
        vec!["link-stabilizer", "--input", &asym],
        vec!["link-stabilizer", "--input", "/nonexistent/file.json"],
        vec!["tree-structure", "--input", &cyclic],
        vec!["rotation-verify", "--so4", "2I"],
        vec!["rotation-verify", "--so4", "I,I"],
        vec!["rotation-verify", "--max-n", "61"],
        vec!["seifert-check", "--alpha", "1"],
        vec!["seifert-check", "--alpha", "1", "--beta", "0", "--delta", "1", "--gamma", "0", "--w", "0"],
    ];
    for args in cases {
        let out = linksym(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn falsified_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let double_star = serde_json::to_string(&LabeledTree::double_star(3, 3)).unwrap();
    let input = write(dir.path(), "double_star.json", &double_star);
    let out = linksym(&["tree-structure", "--input", &input], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["single_vertex_or_spider"], false);

    // the uninverted-edge tree: full tree gives an edge locus, the spanned subtree a vertex
    let tree = r#"{"vertices": 8, "edges": [[0,1],[0,2],[0,3],[0,4],[0,5],[1,6],[1,7]],
        "labels": {"1": 2, "2": 3, "3": 4, "4": 5}}"#;
    let input = write(dir.path(), "edge.json", tree);
    let full = linksym(&["tree-invariant", "--input", &input], None);
    assert_eq!(full.status.code(), Some(1));
    assert_eq!(report(&full)["contradiction"], true);
    let spanned = linksym(&["tree-invariant", "--input", &input, "--span"], None);
    assert_eq!(spanned.status.code(), Some(0));
    assert_eq!(report(&spanned)["locus"]["vertex"], 0);
}

#[test]
fn verified_checks_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spider = serde_json::to_string(&LabeledTree::spider(5, 2)).unwrap();
    let input = write(dir.path(), "spider.json", &spider);
    let out = linksym(&["tree-structure", "--input", &input], None);
    assert_eq!(out.status.code(), Some(0));

    let out = linksym(&["seifert-check", "--alpha", "1", "--beta", "2", "--delta", "0", "--gamma", "-1", "--w", "-3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["transposes"], true);

    let out = linksym(&["rotation-verify", "--so4", "2I,2I"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["quotients"], serde_json::json!(["A5"]));

    let out = linksym(&["rotation-verify", "--max-n", "12"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["flag"], true);
}

#[test]
fn emitted_inputs_round_trip() {
    let tree = LabeledTree::spider(4, 3);
    let text = serde_json::to_string(&tree).unwrap();
    assert_eq!(serde_json::from_str::<LabeledTree>(&text).unwrap(), tree);

    let out = linksym(&["gamma2-missing"], None);
    let r = report(&out);
    for entry in r["subgroups"].as_array().unwrap() {
        let gens: Vec<WhittenElement> = serde_json::from_value(entry["generators"].clone()).unwrap();
        assert!(!gens.is_empty());
        let again = serde_json::to_value(&gens).unwrap();
        assert_eq!(again, entry["generators"]);
    }

    let sweep = linksym(&["seifert-check", "--sweep", "--bound", "2"], None);
    let parsed: linksym::seifert::SweepReport = serde_json::from_slice(&sweep.stdout).unwrap();
    assert!(parsed.flag);
    assert_eq!(sweep.status.code(), Some(0));
}
