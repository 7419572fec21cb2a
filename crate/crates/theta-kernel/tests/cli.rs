use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_theta-kernel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_gram(dir: &Path, name: &str, rows: Value) -> String {
    let size = rows.as_array().unwrap().len();
    let path = dir.join(name);
    fs::write(&path, json!({ "size": size, "entries": rows }).to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn theta_of_a2() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_gram(dir.path(), "a2.json", json!([[2, -1], [-1, 2]]));
    let out = run(&["theta", "--gram", &a2, "--degree", "1", "--bound", "10"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["coeffs"][0], json!({ "index_2T": [[0]], "value": "1" }));
    assert_eq!(v["coeffs"][1], json!({ "index_2T": [[2]], "value": "6" }));
    assert_eq!(v["bound"], json!(10));
}

#[test]
fn det_theta_with_improper_automorphism_warns() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_gram(dir.path(), "s.json", json!([[2, 1], [1, 12]]));
    let out = run(&["theta", "--gram", &s, "--degree", "2", "--bound", "6", "--det"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["coeffs"], json!([]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    let s = write_gram(dir.path(), "t.json", json!([[4, 1], [1, 6]]));
    let out = run(&["theta", "--gram", &s, "--degree", "2", "--bound", "6", "--det"]);
    assert_ne!(json_of(&out)["coeffs"], json!([]));
    assert!(out.stderr.is_empty());
}

#[test]
fn cusp_prefactor_for_square_determinant() {
    // A_2 ⊥ A_2 has determinant 9 and level 3.
    let dir = tempfile::tempdir().unwrap();
    let s = write_gram(dir.path(), "a2a2.json", json!([[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]]));
    let out = run(&["theta", "--gram", &s, "--degree", "1", "--bound", "2", "--cusp", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["prefactor_halves"], json!(-2));
    assert_eq!(v["denominator"], json!(3));
    assert_eq!(v["cusp"]["step"], json!(1));
}

#[test]
fn classgroup_examples() {
    let v = json_of(&run(&["classgroup", "--disc", "-23"]));
    assert_eq!(v["class_number"], json!(3));
    assert_eq!(v["ambiguous"], json!([[1, 1, 6]]));
    assert_eq!(json_of(&run(&["classgroup", "--disc", "-47"]))["class_number"], json!(5));
    assert_eq!(json_of(&run(&["classgroup", "--disc", "-3"]))["class_number"], json!(1));
    let csv = run(&["classgroup", "--disc", "-23", "--csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "a,b,c,ambiguous,gl_partner\n1,1,6,true,\n2,1,3,false,2\n2,-1,3,false,1\n");
}

#[test]
fn invariants_of_a2() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_gram(dir.path(), "a2.json", json!([[2, -1], [-1, 2]]));
    let v = json_of(&run(&["invariants", "--gram", &a2, "--p", "3"]));
    assert_eq!(v["det"], json!("3"));
    assert_eq!(v["level"], json!("3"));
    assert_eq!(v["rank"], json!(2));
    assert_eq!(v["at_p"], json!({ "p": 3, "rank_mod_p": 1, "p_maximal": true }));
    let product: i64 = v["hasse_witt"].as_array().unwrap().iter().map(|h| h["hasse_witt"].as_i64().unwrap()).product();
    assert_eq!(product, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["classgroup", "--disc", "5"])), 2);
    assert_eq!(code(&run(&["theta", "--gram", "/nonexistent/g.json", "--bound", "3"])), 2);
    assert_eq!(code(&run(&["verify", "kernel", "--p", "9"])), 2);
    assert_eq!(code(&run(&["verify", "kernel"])), 2);
    assert_eq!(code(&run(&["verify", "nonsense", "--p", "3"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"size\": 2, \"entries\": [[1, 0], [0, 1]]}").unwrap();
    assert_eq!(code(&run(&["theta", "--gram", bad.to_str().unwrap(), "--bound", "3"])), 2);
    fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["invariants", "--gram", bad.to_str().unwrap()])), 2);
    // For p = 3 the ambiguous class is A_2 with 12 automorphisms, so the
    // diagonal entry 4 of the coefficient table fails.
    assert_eq!(code(&run(&["verify", "dimensions", "--p", "3", "--bound", "4"])), 3);
}

#[test]
fn verify_kernel_covers_every_class() {
    let out = run(&["verify", "kernel", "--p", "23", "--bound", "10"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], json!("pass"));
    let reports = v["reports"].as_array().unwrap();
    for label in ["S_{23,0}", "S_{23,1}", "conj S_{23,1}"] {
        assert_eq!(reports.iter().filter(|r| r["parameters"]["S"] == json!(label)).count(), 3 + (label == "S_{23,0}") as usize * 2);
    }
    assert!(reports.iter().all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn verify_dimensions_and_dj() {
    let v = json_of(&run(&["verify", "dimensions", "--p", "47", "--bound", "12"]));
    assert_eq!(v["verdict"], json!("pass"));
    let dims: Vec<_> = v["reports"].as_array().unwrap().iter().filter_map(|r| r["parameters"].get("dimension")).collect();
    assert_eq!(dims, [&json!(3), &json!(2)]);

    let v = json_of(&run(&["verify", "dj", "--n", "2", "--p", "3"]));
    let j1 = &v["reports"][1];
    assert_eq!(j1["parameters"]["index"], json!("4"));
    assert_eq!(j1["witness"]["brute_force_index"], json!(4));
}

#[test]
fn output_is_deterministic_across_threads_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["verify", "witt", "--p", "31"];
    assert_eq!(code(&bin().args(args).args(["--threads", "1", "--out", a.to_str().unwrap()]).output().unwrap()), 0);
    assert_eq!(code(&bin().args(args).args(["--threads", "3", "--out", b.to_str().unwrap()]).output().unwrap()), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let csv = run(&["verify", "erratum", "--p", "5", "--bound", "6", "--csv"]);
    assert_eq!(code(&csv), 0);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("suite,claim,paper_ref,verdict,bound,parameters,witness,elapsed_ms\n"));
    assert_eq!(text.lines().count(), 2);

    let timed = json_of(&run(&["verify", "dj", "--n", "1", "--p", "5", "--timing"]));
    assert!(timed["reports"][0]["elapsed_ms"].is_u64());
}

#[test]
fn data_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir_all(dir.path().join("classes")).unwrap();
    fs::write(dir.path().join("classes/disc-23.json"), "{\"discriminant\": -23, \"forms\": []}").unwrap();
    let out = bin().env("THETA_KERNEL_DATA", dir.path()).args(["verify", "witt", "--p", "23"]).output().unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("disagrees"));

    let empty = tempfile::tempdir().unwrap();
    let out = bin().env("THETA_KERNEL_DATA", empty.path()).args(["verify", "witt", "--p", "23"]).output().unwrap();
    assert_eq!(code(&out), 0);
}
