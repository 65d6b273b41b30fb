use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane"))
        .args(args)
        .env_remove("QPLANE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, contents: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn count_and_chains_examples() {
    let out = qplane(&["count", "--ell", "2", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"count":4}"#
    );

    let out = qplane(&["chains", "--ell", "4", "--counts", "3,2,3,1"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"m":[2,0,1,1]}"#
    );
}

#[test]
fn enumerate_lists_dimensions() {
    let out = stdout_json(&qplane(&["enumerate", "--ell", "2", "--n", "2"]));
    let indices = out["indices"].as_array().unwrap();
    assert_eq!(indices.len(), 4);
    assert!(indices
        .iter()
        .any(|i| i["m"] == serde_json::json!([0, 1]) && i["dim"] == 5));

    let git = stdout_json(&qplane(&["enumerate", "--ell", "2", "--n", "2", "--git"]));
    assert_eq!(git["git"].as_array().unwrap().len(), 4);
    let git2 = stdout_json(&qplane(&["git-enumerate", "--ell", "2", "--n", "2"]));
    assert_eq!(git, git2);

    let inf = stdout_json(&qplane(&["count", "--ell", "inf", "--n", "3"]));
    assert_eq!(inf["count"], 10);
}

#[test]
fn sample_classify_round_trip_and_determinism() {
    let args = [
        "sample",
        "--ell",
        "3",
        "--index",
        r#"{"m":[1,1,0],"r":[0,1]}"#,
        "--seed",
        "9",
    ];
    let first = qplane(&args);
    let second = qplane(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "byte-identical output");
    let sample = stdout_json(&first);
    assert_eq!(sample["seed"], 9);

    let path = write("sample.json", &String::from_utf8_lossy(&first.stdout));
    let classified = stdout_json(&qplane(&["classify", "--input", &path]));
    assert_eq!(classified["index"], sample["index"]);

    let inv = stdout_json(&qplane(&[
        "invariants",
        "--input",
        &path,
        "--max-degree",
        "2",
    ]));
    assert_eq!(inv["N"], 2);
    assert_eq!(inv["T"][0][0], "5");
    assert_eq!(inv["T"].as_array().unwrap().len(), 3);

    let homext = stdout_json(&qplane(&["homext", "--m1", &path, "--m2", &path]));
    assert!(homext["hom"].as_u64().unwrap() >= 1);
}

#[test]
fn seed_comes_from_environment_when_not_given() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qplane"));
        cmd.args(["sample", "--ell", "inf", "--index", r#"{"m":{"2":1}}"#]);
        cmd.env_remove("QPLANE_SEED");
        if let Some(s) = seed {
            cmd.env("QPLANE_SEED", s);
        }
        stdout_json(&cmd.output().unwrap())
    };
    assert_eq!(run(Some("41"))["seed"], 41);
    assert_eq!(run(None)["seed"], qplane::cli::DEFAULT_SEED);
    assert_ne!(run(Some("41"))["A"], run(Some("42"))["A"]);
}

#[test]
fn commutant_of_a_jordan_block() {
    let path = write(
        "jordan.json",
        r#"{"field":{"type":"cyclotomic","ell":2},"A":{"rows":2,"cols":2,"entries":[["0","1"],["0","0"]]}}"#,
    );
    let out = stdout_json(&qplane(&["commutant", "--input", &path]));
    assert_eq!(out["dim"], 2);
    assert_eq!(out["predicted"], 2);
}

#[test]
fn exit_codes() {
    let violated = write(
        "violated.json",
        r#"{"field":{"type":"cyclotomic","ell":3},"A":{"rows":1,"cols":1,"entries":[["1"]]},"B":{"rows":1,"cols":1,"entries":[["1"]]}}"#,
    );
    assert_eq!(
        qplane(&["classify", "--input", &violated]).status.code(),
        Some(3)
    );

    let irrational = write(
        "irrational.json",
        r#"{"field":{"type":"generic_q"},"A":{"rows":2,"cols":2,"entries":[["0","2"],["1","0"]]},"B":{"rows":2,"cols":2,"entries":[["0","0"],["0","0"]]}}"#,
    );
    assert_eq!(
        qplane(&["classify", "--input", &irrational]).status.code(),
        Some(4)
    );

    let hinted = write(
        "hinted.json",
        r#"{"field":{"type":"cyclotomic","ell":1},"A":{"rows":2,"cols":2,"entries":[["1","0"],["0","2"]]},"B":{"rows":2,"cols":2,"entries":[["3","0"],["0","4"]]},"hints":["2"]}"#,
    );
    assert!(qplane(&["classify", "--input", &hinted]).status.success());

    let malformed = write(
        "malformed.json",
        r#"{"field":{"type":"cyclotomic","ell":3},"A":{"rows":1,"cols":1,"entries":[["1 +"]]},"B":{"rows":1,"cols":1,"entries":[["0"]]}}"#,
    );
    assert_eq!(
        qplane(&["classify", "--input", &malformed]).status.code(),
        Some(2)
    );
    assert_eq!(
        qplane(&["classify", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qplane(&["count", "--ell", "zero", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qplane(&["sample", "--ell", "2", "--index", r#"{"m":[0,0,1]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qplane(&[]).status.code(), Some(2));
}
