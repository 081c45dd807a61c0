use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TWO: &str = r#"{"objects":["0","1"],"morphisms":[{"id":"a","src":"0","tgt":"1"}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_balanced"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let put = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();
    put("two.json", TWO);
    put("point1.json", r#"{"dom":{"objects":["*"]},"cod":"two.json","obj_map":{"*":"1"}}"#);
    put("point0.json", r#"{"dom":{"objects":["*"]},"cod":"two.json","obj_map":{"*":"0"}}"#);
    put("vee.json", r#"{"elements":["a","b","c"],"leq":[["a","c"],["b","c"]]}"#);
    put("top.json", r#"{"dom":{"elements":["x"]},"cod":"vee.json","map":{"x":"c"}}"#);
    put("surj.json", r#"{"dom":3,"cod":2,"map":[0,0,1]}"#);
    put("path.json", r#"{"nodes":["u","v","w"],"edges":[{"id":"e","src":"u","tgt":"v"},{"id":"f","src":"v","tgt":"w"},{"id":"g","src":"u","tgt":"w"}]}"#);
    put(
        "sub.json",
        r#"{"base":"two.json","fiber":{"0":["p","q"],"1":["r"]},"action":{"a":[["r","p"]]}}"#,
    );
    dir
}

#[test]
fn point_at_terminal_is_final() {
    let d = fixtures();
    let o = run(d.path(), &["check", "final", "point1.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);
}

#[test]
fn point_at_initial_is_not_final_and_exits_one() {
    let d = fixtures();
    let o = run(d.path(), &["check", "final", "point0.json"]);
    assert_eq!(code(&o), 1);
    let w = &json(&o)["witness"];
    assert_eq!(w["object_name"], "1");
    assert_eq!(w["components"], 0);
}

#[test]
fn backwards_homset_is_empty() {
    let d = fixtures();
    let o = run(d.path(), &["homset", "two.json", "--from", "1", "--to", "0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["size"], 0);
    assert_eq!(v["elements"], Value::Array(vec![]));
    let o = run(d.path(), &["homset", "two.json", "--from", "0", "--to", "1"]);
    assert_eq!(json(&o)["size"], 1);
}

#[test]
fn unparseable_file_exits_two_with_position() {
    let d = fixtures();
    std::fs::write(d.path().join("bad.json"), "{\n  \"objects\": [\"0\"],\n  \"bogus\": 1\n}").unwrap();
    let o = run(d.path(), &["validate", "bad.json"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn invalid_category_exits_two() {
    let d = fixtures();
    std::fs::write(d.path().join("c.json"), r#"{"objects":["0"],"morphisms":[{"id":"a","src":"0","tgt":"9"}]}"#).unwrap();
    assert_eq!(code(&run(d.path(), &["validate", "c.json"])), 2);
}

#[test]
fn graph_instance_rejects_unrelated_commands() {
    let d = fixtures();
    assert_eq!(code(&run(d.path(), &["--instance", "graph", "slice", "two.json", "--object", "0"])), 2);
    let o = run(d.path(), &["--instance", "graph", "paths", "path.json", "--from", "u", "--to", "w"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn factorization_mid_feeds_back_into_homset() {
    let d = fixtures();
    let o = run(d.path(), &["factorize", "point0.json", "--system", "right", "--out-dir", "fac"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for part in ["mid", "e", "m"] {
        assert!(d.path().join("fac").join(format!("{part}.json")).exists());
    }
    // The right factorization of the point 0 passes through the coslice 0\2.
    let o = run(d.path(), &["validate", "fac/mid.json"]);
    assert_eq!(code(&o), 0);
    let o = run(d.path(), &["check", "dof", "fac/m.json"]);
    assert_eq!(code(&o), 0);
    let o = run(d.path(), &["check", "initial", "fac/e.json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn out_writes_the_file_instead_of_stdout() {
    let d = fixtures();
    let o = run(d.path(), &["--out", "op.json", "opposite", "two.json"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("op.json")).unwrap()).unwrap();
    assert_eq!(v["morphisms"][0]["src"], "1");
}

#[test]
fn pos_and_finset_instances_answer_checks() {
    let d = fixtures();
    assert_eq!(code(&run(d.path(), &["--instance", "pos", "check", "final", "top.json"])), 0);
    assert_eq!(code(&run(d.path(), &["--instance", "pos", "check", "dense", "top.json"])), 1);
    // In FinSet with (epi, mono), a surjection lies in the left class.
    assert_eq!(code(&run(d.path(), &["--instance", "finset", "check", "final", "surj.json"])), 0);
    assert_eq!(code(&run(d.path(), &["--instance", "finset", "check", "df", "surj.json"])), 1);
    assert_eq!(code(&run(d.path(), &["--instance", "finset", "check", "dense", "surj.json"])), 2);
}

#[test]
fn pi0_of_connected_category_is_a_point() {
    let d = fixtures();
    let o = run(d.path(), &["pi0", "two.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["components"]["objects"].as_array().unwrap().len(), 1);
}

#[test]
fn complement_and_tensor_run() {
    let d = fixtures();
    let o = run(d.path(), &["complement", "sub.json", "--set", "s,t"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(d.path(), &["tensor", "point0.json", "point1.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    // The points 0 and 1 of 2 have an empty pullback.
    assert_eq!(json(&o)["size"], 0);
    let o = run(d.path(), &["tensor", "point0.json", "point0.json"]);
    assert_eq!(json(&o)["size"], 1);
}

#[test]
fn size_guard_exceeded_exits_two() {
    let d = fixtures();
    let o = bin()
        .current_dir(d.path())
        .env("BALANCED_SIZE_GUARD", "1")
        .args(["laws", "run", "--suite", "bfc-axioms", "--per-family", "1", "--families", "product"])
        .output()
        .unwrap();
    // Every case skips; skipping is not failure.
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["verdict"] == "skipped-size-guard"));
    let o = bin().current_dir(d.path()).env("BALANCED_SIZE_GUARD", "1").args(["cone", "list", "point0.json"]).output().unwrap();
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("size guard"), "{err}");
}

#[test]
fn unknown_law_exits_two() {
    let d = fixtures();
    assert_eq!(code(&run(d.path(), &["laws", "run", "--suite", "no-such-law"])), 2);
}

#[test]
fn laws_run_is_deterministic_and_passes() {
    let d = fixtures();
    let args = ["laws", "run", "--suite", "eq3a,prop4", "--seed", "7", "--per-family", "1"];
    let a = run(d.path(), &[&args[..], &["--out", "a.json"]].concat());
    let b = run(d.path(), &[&args[..], &["--out", "b.json"]].concat());
    assert_eq!((code(&a), code(&b)), (0, 0));
    let read = |p: &str| std::fs::read(d.path().join(p)).unwrap();
    assert_eq!(read("a.json"), read("b.json"));
    assert!(String::from_utf8_lossy(&a.stdout).contains("suite passed"));
}

#[test]
fn laws_list_names_every_law() {
    let d = fixtures();
    let o = run(d.path(), &["laws", "list"]);
    let v = json(&o);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"cfs-soundness") && ids.contains(&"mu-assoc"));
}
