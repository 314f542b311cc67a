use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SIGMA_EX2: &str = "5,8,21,6,20,1,11,14,36,22,10,34,30,27,7,15,31,17,23,26,3,24,2,19,29,32,18,4,28,16,12,9,25,33,13,35";

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .env_remove("EKR_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = ekr(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (code, v)
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("report does not match the schema: {msgs:#?}");
    }
}

#[test]
fn ekr_example() {
    let (code, v) = json(&["ekr", "--n", "4", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    let r = &v["result"];
    assert_eq!(r["max_intersecting"], 10);
    assert_eq!(r["star_size"], 10);
    assert_eq!(r["is_ekr"], true);
    assert_eq!(r["witness"].as_array().unwrap().len(), 10);
}

#[test]
fn lemma23_example() {
    let (code, v) = json(&[
        "lemma23", "--n", "6", "--t", "2", "--u", "1", "--sigma", "identity",
    ]);
    assert_eq!(code, 0);
    let rep = &v["result"]["reports"][0];
    assert_eq!(rep["family_size"], 24);
    assert!(rep["max_intersecting"].as_u64().unwrap() <= 6);
    assert_eq!(rep["pass"], true);
}

#[test]
fn distribution_example() {
    let (code, v) = json(&["distribution", "--n", "2", "--r", "2", "--s", "1"]);
    assert_eq!(code, 0);
    let masses = v["result"]["masses"].as_array().unwrap();
    assert_eq!(masses.len(), 4);
    assert!(masses.iter().all(|m| m["mass"] == "1/4"));
}

#[test]
fn table_reproduces_reference_rows() {
    let (code, v) = json(&[
        "lemma23", "--n", "18", "--t", "6", "--u", "3", "--s", "2", "--sigma", SIGMA_EX2,
    ]);
    assert_eq!(code, 0);
    let rows = v["result"]["table"]["rows"].as_array().unwrap();
    let row = |j: usize| &rows[j - 1];
    let labels = |x: &Value| {
        x.as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(labels(&row(1)["c1"]), [6, 20, 1, 11, 14, 36, 24, 2, 19]);
    assert_eq!(labels(&row(3)["c2"]), [18, 4, 28, 16, 12, 9, 34, 30, 27]);
    assert_eq!(labels(&row(36)["c2"]), [19, 29, 32, 18, 4, 28, 36, 22, 10]);

    let text = String::from_utf8(
        ekr(&[
            "lemma23", "--n", "18", "--t", "6", "--u", "3", "--s", "2", "--sigma", SIGMA_EX2,
            "--format", "text",
        ])
        .stdout,
    )
    .unwrap();
    assert!(
        text.contains("C_1^1  = { 6,20, 1,11,14,36,  24, 2,19}"),
        "{text}"
    );
}

#[test]
fn every_command_matches_the_schema() {
    let schema = schema();
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("family.json");
    std::fs::write(&family, "[[7, 2], [7, 5]]").unwrap();
    let family = family.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--n", "3", "--r", "2", "--members"],
        vec![
            "enumerate",
            "--n",
            "2",
            "--r",
            "2",
            "--kind",
            "claw",
            "--k",
            "3",
        ],
        vec!["shift", "--n", "3", "--r", "2", "--seed", "4"],
        vec!["shift", "--n", "3", "--family", family],
        vec![
            "lemma23", "--n", "5", "--t", "3", "--sigma", "random", "--count", "3",
        ],
        vec!["lemma23", "--n", "4", "--t", "2", "--u", "2"],
        vec![
            "sample", "--n", "3", "--r", "2", "--s", "1", "--draws", "2000",
        ],
        vec![
            "distribution",
            "--n",
            "2",
            "--r",
            "2",
            "--s",
            "0",
            "--scheme",
            "factorial",
        ],
        vec!["ekr", "--n", "3", "--r", "2", "--mode", "shifted-reduced"],
        vec!["ekr", "--n", "2", "--r", "1", "--kind", "claw", "--k", "3"],
        vec![
            "scan", "--max-n", "3", "--max-r", "3", "--kinds", "p3,claw3",
        ],
        vec!["scan", "--max-n", "2", "--max-r", "2", "--max-members", "4"],
        vec!["chvatal", "--n", "4", "--r", "2"],
    ];
    for args in runs {
        let (_, v) = json(&args);
        assert_eq!(v["command"], args[0]);
        assert_valid(&schema, &v);
    }
}

fn without_timestamp(out: &Output) -> String {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec![
            "sample", "--n", "4", "--r", "2", "--s", "0", "--draws", "5000",
        ],
        vec!["shift", "--n", "4", "--r", "3"],
        vec![
            "lemma23", "--n", "7", "--t", "2", "--u", "1", "--sigma", "random", "--count", "4",
        ],
        vec!["scan", "--max-n", "3", "--max-r", "3"],
        vec!["ekr", "--n", "4", "--r", "3"],
    ] {
        let a = ekr(&args);
        let b = ekr(&args);
        assert_eq!(without_timestamp(&a), without_timestamp(&b), "{args:?}");
        assert!(!without_timestamp(&a).is_empty());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ekr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ekr(&["ekr", "--n", "4"]).status.code(), Some(2));
    assert_eq!(ekr(&["scan", "--kinds", "tree"]).status.code(), Some(2));
    assert_eq!(
        ekr(&["distribution", "--n", "2", "--r", "3", "--s", "0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        ekr(&["lemma23", "--n", "2", "--t", "1", "--sigma", "1,3,2,4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        ekr(&["shift", "--n", "2", "--family", "/nonexistent/family.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ekr(&["ekr", "--n", "4", "--r", "2", "--max-members", "10"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ekr(&["scan", "--max-n", "2", "--max-r", "2", "--max-members", "4"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ekr(&[
            "distribution",
            "--n",
            "2",
            "--r",
            "2",
            "--s",
            "0",
            "--scheme",
            "factorial"
        ])
        .status
        .code(),
        Some(5)
    );
    // Beyond r <= n the path union stops being EKR.
    assert_eq!(ekr(&["ekr", "--n", "2", "--r", "3"]).status.code(), Some(5));
}

#[test]
fn non_intersecting_family_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, "[[1], [4]]").unwrap();
    let out = ekr(&["shift", "--n", "2", "--family", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not intersecting"));
    std::fs::write(&path, "[[1, 5]]").unwrap();
    assert_eq!(
        ekr(&["shift", "--n", "2", "--family", path.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn output_destinations() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nested/out.csv");
    let out = ekr(&[
        "ekr",
        "--n",
        "4",
        "--r",
        "2",
        "--format",
        "csv",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&file).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("kind,n,k,r,max,star,is_ekr,nodes,millis")
    );
    assert!(lines.next().unwrap().starts_with("p3,4,2,2,10,10,true,"));

    let out = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["enumerate", "--n", "3", "--r", "2", "--format", "csv"])
        .env("EKR_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("enumerate.csv")).unwrap();
    assert_eq!(csv, "n,r,s,count\n3,2,0,15\n3,2,1,12\n3,2,2,3\n");
}

#[test]
fn threads_flag_is_accepted() {
    let (code, v) = json(&[
        "--threads",
        "2",
        "distribution",
        "--n",
        "3",
        "--r",
        "2",
        "--s",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["config"]["threads"], 2);
    assert_eq!(v["result"]["uniform"], true);
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let (_, good) = json(&["ekr", "--n", "3", "--r", "1"]);
    assert!(schema.is_valid(&good));
    let mut missing = good.clone();
    missing["result"].as_object_mut().unwrap().remove("is_ekr");
    assert!(!schema.is_valid(&missing));
    let mut zero_id = good.clone();
    zero_id["result"]["witness"] = serde_json::json!([[0]]);
    assert!(!schema.is_valid(&zero_id));
    let mut status = good;
    status["status"] = "maybe".into();
    assert!(!schema.is_valid(&status));
}
