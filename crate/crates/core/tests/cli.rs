use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bjclass(args: &[&str]) -> Run {
    bjclass_env(args, None)
}

fn bjclass_env(args: &[&str], seed_env: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bjclass"));
    cmd.args(args).env_remove("BJ_SEED");
    if let Some(s) = seed_env {
        cmd.env("BJ_SEED", s);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", r.stdout))
}

#[test]
fn bj_check_reports_both_directions() {
    let r = bjclass(&["bj-check", &fixture("diag_half.json"), &fixture("e2e2.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["orthogonal"], true);

    let r = bjclass(&["bj-check", &fixture("diag_half.json"), &fixture("diag_half.json"), "--method", "both"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["orthogonal"], false);
    assert_eq!(v["agree"], true);

    let r = bjclass(&["bj-check", &fixture("diag_half.json"), &fixture("e2e2.json"), "--method", "brute"]);
    assert_eq!(json(&r)["orthogonal"], true);
}

#[test]
fn bj_check_input_errors() {
    assert_eq!(bjclass(&["bj-check", &fixture("diag_half.json"), &fixture("missing.json")]).code, 2);
    assert_eq!(bjclass(&["bj-check", &fixture("diag_half.json"), &fixture("m1r.json")]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let three = dir.path().join("three.json");
    std::fs::write(&three, bjclass_lib_identity(3)).unwrap();
    let r = bjclass(&["bj-check", &fixture("diag_half.json"), three.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("different algebras"), "{}", r.stderr);
}

fn bjclass_lib_identity(n: usize) -> String {
    use bjclass::matkernel::{BaseField, DivisionAlgebra, KMatrix};
    bjclass::io::matrix_to_json(&KMatrix::identity(DivisionAlgebra::Real, BaseField::Real, n))
}

#[test]
fn offdiagonal_chain_pair_orthogonality_is_consistent() {
    // The stored chain: its first two elements satisfy A₁^⊥ ⊊ A₂^⊥.
    let dir = tempfile::tempdir().unwrap();
    let file: bjclass::io::ChainFile =
        serde_json::from_str(&std::fs::read_to_string(fixture("offdiagonal_chain.json")).unwrap()).unwrap();
    let a1 = dir.path().join("a1.json");
    let a2 = dir.path().join("a2.json");
    let w = dir.path().join("w.json");
    std::fs::write(&a1, serde_json::to_string(&file.elements[0]).unwrap()).unwrap();
    std::fs::write(&a2, serde_json::to_string(&file.elements[1]).unwrap()).unwrap();
    std::fs::write(&w, serde_json::to_string(&file.strictness_witnesses[0]).unwrap()).unwrap();
    let (a1, a2, w) = (a1.to_str().unwrap(), a2.to_str().unwrap(), w.to_str().unwrap());
    assert_eq!(json(&bjclass(&["bj-check", a2, w, "--method", "both"]))["orthogonal"], true);
    assert_eq!(json(&bjclass(&["bj-check", a1, w, "--method", "both"]))["orthogonal"], false);
}

#[test]
fn chain_command() {
    let r = bjclass(&["chain", "--algebra", "M3(H)", "--seed", "4"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["length"], 3);
    assert_eq!(v["chain"]["strictness_witnesses"].as_array().unwrap().len(), 2);

    let r = bjclass(&["chain", "--from", &fixture("identity2.json")]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["length"], 2);
    let last = &v["chain"]["elements"][1]["entries"];
    assert_eq!(last, &serde_json::json!([[[1.0], [0.0]], [[0.0], [1.0]]]));

    let r = bjclass(&["chain", "--from", &fixture("offdiagonal_chain.json")]);
    assert_eq!((r.code, json(&r)["length"].as_u64()), (0, Some(4)));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chain.json");
    let r = bjclass(&["chain", "--algebra", "M2(C)/C", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let stored: bjclass::io::ChainFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(stored.to_chain().unwrap().len(), 2);
}

#[test]
fn chain_command_failures() {
    // A valid but non-maximal chain.
    let full: Value = serde_json::from_str(&std::fs::read_to_string(fixture("offdiagonal_chain.json")).unwrap()).unwrap();
    let mut short = full.clone();
    short["elements"].as_array_mut().unwrap().truncate(3);
    short["strictness_witnesses"].as_array_mut().unwrap().truncate(2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("short.json");
    std::fs::write(&p, short.to_string()).unwrap();
    let r = bjclass(&["chain", "--from", p.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["maximal"], false);

    assert_eq!(bjclass(&["chain", "--from", &fixture("offdiagonal_chain_corrupted.json")]).code, 1);
    assert_eq!(bjclass(&["chain", "--algebra", "M2(Q)"]).code, 2);
    assert_eq!(bjclass(&["chain"]).code, 2);
}

#[test]
fn classify_command() {
    for (spec, case) in [("M3(R)", "iii"), ("M2(H)", "ii"), ("M3(C)/C", "iv"), ("M2(C)", "i")] {
        let r = bjclass(&["classify", "--algebra", spec, "--seed", "1", "--expect"]);
        assert_eq!(r.code, 0, "{spec}: {}", r.stderr);
        assert_eq!(json(&r)["theorem_case"], case);
    }
    let v = json(&bjclass(&["classify", "--algebra", "M3(C)/C", "--samples", "200"]));
    assert!(v["evidence"]["bucket_count"].as_u64().unwrap() > 2);
    assert_eq!(bjclass(&["classify", "--algebra", &fixture("m2c_plus_m1c.json")]).code, 2);
    assert_eq!(bjclass(&["classify", "--algebra", &fixture("m1r.json")]).code, 2);
    assert_eq!(bjclass(&["classify", "--algebra", "M1(C)/C"]).code, 2);
}

#[test]
fn classify_expect_catches_a_mismatch() {
    // A single draw cannot show that the bucket count stays at two, so M₂(R) is misread as case iv.
    let r = bjclass(&["classify", "--algebra", "M2(R)", "--samples", "1", "--expect"]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["theorem_case"], "iv");
}

#[test]
fn verify_command() {
    let r = bjclass(&["verify", "--suite", "lemmas", "--algebra", "M2(R)", "--trials", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(json(&r)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let r = bjclass(&["verify", "--suite", "oracle", "--algebra", "M3(C)/R", "--trials", "200"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(json(&r)["agreement"].as_f64().unwrap() >= 0.995);

    let r = bjclass(&["verify", "--suite", "classification", "--algebra", "M2(C)+M1(C)/C"]);
    assert_eq!(r.code, 0);

    let good = bjclass(&["verify", "--suite", "lemmas", "--algebra", "M4(R)", "--trials", "2", "--chain", &fixture("offdiagonal_chain.json")]);
    assert_eq!(good.code, 0, "{}", good.stderr);
    let bad = bjclass(&[
        "verify",
        "--suite",
        "lemmas",
        "--algebra",
        "M4(R)",
        "--trials",
        "2",
        "--chain",
        &fixture("offdiagonal_chain_corrupted.json"),
    ]);
    assert_eq!(bad.code, 1);
    let failures: Value = serde_json::from_str(&bad.stderr).unwrap();
    assert_eq!(failures[0]["name"], "chain_valid");

    assert_eq!(bjclass(&["verify", "--suite", "everything"]).code, 2);
}

#[test]
fn digraph_command() {
    let r = bjclass(&["digraph", "--algebra", "M1(R)", "--count", "5", "--include-zero", "--seed", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, std::fs::read_to_string(fixture("m1r_star.dot")).unwrap());
    assert!(r.stdout.contains("v0 -> v3;") && r.stdout.contains("v3 -> v0;") && !r.stdout.contains("v1 -> v2;"));

    let r = bjclass(&["digraph", "--algebra", "M2(R)", "--count", "100", "--format", "json", "--seed", "3"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    let classes = v["reduced_classes"].as_array().unwrap();
    assert_eq!(classes.iter().map(|c| c.as_array().unwrap().len()).sum::<usize>(), 100);

    assert_eq!(bjclass(&["digraph", "--algebra", "M2(R)", "--format", "svg"]).code, 2);
    assert_eq!(bjclass(&["digraph", "--algebra", "M1(C)+M1(C)/C"]).code, 2);
}

#[test]
fn witness_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let r = bjclass(&["witness", "right", &fixture("diag_half.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!((v["b_perp_a"]["orthogonal"].as_bool(), v["a_perp_b"]["orthogonal"].as_bool()), (Some(true), Some(false)));
    let w = bjclass::io::read_matrix(&out).unwrap();
    assert_eq!(w.n(), 2);

    let v = json(&bjclass(&["witness", "left", &fixture("diag_one_zero.json")]));
    assert_eq!(v["stage"], 2);
    assert_eq!(v["verified"], true);

    assert_eq!(bjclass(&["witness", "right", &fixture("identity2.json")]).code, 2);
    let one = dir.path().join("one.json");
    std::fs::write(&one, bjclass_lib_identity(1)).unwrap();
    assert_eq!(bjclass(&["witness", "left", one.to_str().unwrap()]).code, 2);
}

#[test]
fn simplicity_command() {
    let v = json(&bjclass(&["simplicity", "--algebra", &fixture("m2c_plus_m1c.json")]));
    assert_eq!((v["dim"].as_u64(), v["chain_length"].as_u64(), v["simple"].as_bool()), (Some(5), Some(3), Some(false)));
    let v = json(&bjclass(&["simplicity", "--algebra", "M3(C)/C"]));
    assert_eq!((v["dim"].as_u64(), v["chain_length"].as_u64(), v["simple"].as_bool()), (Some(9), Some(3), Some(true)));
    let v = json(&bjclass(&["simplicity", "--algebra", "M1(C)+M1(C)+M1(C)+M1(C)/C"]));
    assert_eq!((v["dim"].as_u64(), v["chain_length"].as_u64(), v["simple"].as_bool()), (Some(4), Some(4), Some(false)));
    assert_eq!(bjclass(&["simplicity", "--algebra", "M2(R)"]).code, 2);
}

#[test]
fn dimension_command() {
    let v = json(&bjclass(&["dimension", "--algebra", "M1(H)", "--pool", "10", "--trials", "3"]));
    assert_eq!(v["candidate_size"], 4);
    assert_eq!(v["refuted_smaller"], true);
}

#[test]
fn commands_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["digraph", "--algebra", "M2(H)", "--count", "15", "--seed", "9", "--format", "json"],
        &["chain", "--algebra", "M3(C)", "--seed", "9"],
        &["classify", "--algebra", "M2(C)/C", "--seed", "9", "--samples", "50"],
        &["verify", "--suite", "oracle", "--algebra", "M2(H)", "--trials", "20", "--seed", "9"],
    ];
    for args in runs {
        let a = bjclass(args);
        let b = bjclass(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let args = ["digraph", "--algebra", "M2(R)", "--count", "12", "--format", "json"];
    let env7 = bjclass_env(&args, Some("7"));
    let flag7 = bjclass(&[&args[..], &["--seed", "7"]].concat());
    let default = bjclass(&args);
    assert_eq!(env7.stdout, flag7.stdout);
    assert_ne!(env7.stdout, default.stdout);
    assert_eq!(json(&default)["seed"], 0);
    assert_eq!(bjclass_env(&args, Some("seven")).code, 2);
}

#[test]
fn help_and_version() {
    let r = bjclass(&["--help"]);
    assert_eq!(r.code, 0);
    for cmd in ["bj-check", "chain", "classify", "verify", "digraph", "witness", "simplicity"] {
        assert!(r.stdout.contains(cmd), "{cmd}");
    }
    assert_eq!(bjclass(&["--version"]).code, 0);
    assert_eq!(bjclass(&["frobnicate"]).code, 2);
}
