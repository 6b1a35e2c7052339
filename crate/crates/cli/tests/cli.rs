use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hyperchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperchrom")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperchrom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const FIVE_CYCLE: &str = r#"{"vertices":["a","b","c","d","e"],"edges":[
    {"members":{"a":-1,"b":1}},{"members":{"b":-1,"c":1}},{"members":{"c":-1,"d":1}},
    {"members":{"d":-1,"e":1}},{"members":{"e":-1,"a":1}}]}"#;

#[test]
fn gen_writes_documents() {
    let doc = json(&hyperchrom(&["gen", "hyperflower:c=3,p=3,k=1"]));
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 3);
    let a0 = json(&hyperchrom(&["gen", "examplea0"]));
    assert_eq!(a0["vertices"], serde_json::json!(["v1", "v2", "v3", "v4"]));
}

#[test]
fn gen_seed_applies_to_random_specs() {
    let a = hyperchrom(&["gen", "random:c=3,n=8,m=6", "--seed", "5"]);
    let b = hyperchrom(&["gen", "random:c=3,n=8,m=6,seed=5"]);
    assert_eq!(a.stdout, b.stdout);
    let c = hyperchrom(&["gen", "random:c=3,n=8,m=6,seed=6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn malformed_spec_exits_2() {
    let out = hyperchrom(&["gen", "hyperflower:c=2,k=5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing p"));
    assert_eq!(code(&hyperchrom(&["chromatic", "--family", "examplea0", "--mode", "rainbow"])), 2);
    assert_eq!(code(&hyperchrom(&["chromatic", "--family", "examplea0", "--mode", "d-proper"])), 2);
    assert_eq!(code(&hyperchrom(&["spectrum"])), 2);
}

#[test]
fn invalid_document_exits_3() {
    let isolated = r#"{"vertices":["a","b","c"],"edges":[{"members":{"a":-1,"b":1}}]}"#;
    let out = with_stdin(&["spectrum", "-"], isolated);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero degree"));
    let bad_sign = r#"{"vertices":["a","b"],"edges":[{"members":{"a":0,"b":1}}]}"#;
    assert_eq!(code(&with_stdin(&["spectrum", "-"], bad_sign)), 3);
    assert_eq!(code(&with_stdin(&["spectrum", "-"], "not json")), 3);
}

#[test]
fn missing_file_exits_1() {
    assert_eq!(code(&hyperchrom(&["spectrum", "/nonexistent/h.json"])), 1);
}

#[test]
fn spectrum_reports_clusters() {
    let v = json(&hyperchrom(&["spectrum", "--family", "hyperflower:c=3,p=3,k=1"]));
    assert_eq!(v["clusters"], serde_json::json!([[0.0, 4], [2.0, 2], [3.0, 1]]));
    assert_eq!(v["trace_check"], true);
    assert_eq!(v["consistency"]["pass"], true);
    let e = json(&hyperchrom(&["spectrum", "--family", "hyperflower:c=3,p=4,k=2", "--which", "edge"]));
    assert_eq!(e["clusters"], serde_json::json!([[1.0, 3], [3.0, 1]]));
    let a0 = json(&hyperchrom(&["spectrum", "--family", "examplea0"]));
    assert_eq!(a0["clusters"], serde_json::json!([[1.0, 4]]));
}

#[test]
fn chromatic_numbers_and_witnesses() {
    let strong = json(&hyperchrom(&["chromatic", "--family", "multipartite:c=3,s=2,k=3", "--mode", "strong"]));
    assert_eq!(strong["number"], 3);
    assert_eq!(strong["status"], "exact");
    assert_eq!(strong["witness"]["classes"].as_array().unwrap().len(), 3);
    let dp = json(&hyperchrom(&["chromatic", "--family", "hyperflower:c=9,p=3,k=2", "--mode", "d-proper", "--d", "3"]));
    assert_eq!(dp["number"], 3);
    let same = json(&hyperchrom(&["chromatic", "--family", "hyperflower:c=9,p=3,k=2", "--mode", "d-proper:3"]));
    assert_eq!(dp, same);
    let qt =
        json(&hyperchrom(&["chromatic", "--family", "hyperflower:c=3,p=3,k=1", "--mode", "q-tailored", "--q", "1/2"]));
    assert_eq!(qt["mode"], "q-tailored:1/2");
    let edge = json(&hyperchrom(&["chromatic", "--family", "hyperflower:c=3,p=4,k=2", "--mode", "edge-strong"]));
    assert_eq!(edge["number"], 4);
    assert_eq!(edge["witness"]["classes"][0][0].as_u64(), Some(0));
}

#[test]
fn mode_mismatch_exits_4() {
    let out = hyperchrom(&["chromatic", "--family", "hyperflower:c=3,p=3,k=1", "--mode", "d-improper", "--d", "1"]);
    assert_eq!(code(&out), 4);
    let out = hyperchrom(&["verify", "--family", "hyperflower:c=3,p=3,k=1", "--mode", "d-proper:3"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn exhausted_budget_is_inconclusive_with_exit_0() {
    let out = with_stdin(&["chromatic", "-", "--mode", "strong", "--budget", "1"], FIVE_CYCLE);
    let v = json(&out);
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["number"], Value::Null);
    assert!(v["lower"].as_u64() <= v["upper"].as_u64());
    let full = json(&with_stdin(&["chromatic", "-", "--mode", "strong"], FIVE_CYCLE));
    assert_eq!(full["number"], 3);
}

#[test]
fn verify_sharp_instances() {
    let v = json(&hyperchrom(&["verify", "--family", "multipartite:c=4,s=1,k=5", "--mode", "strong"]));
    assert!((v["report"]["bound"].as_f64().unwrap() - 5.0).abs() < 1e-6);
    assert_eq!(v["report"]["chromatic"], 5);
    assert_eq!(v["report"]["sharp"], true);
    let battery = v["sharpness"].as_array().unwrap();
    assert!(!battery.is_empty());
    assert!(battery.iter().all(|b| b["pass"] == true));

    let e = json(&hyperchrom(&["verify", "--family", "hyperflower:c=3,p=4,k=2", "--mode", "edge-strong"]));
    assert!((e["report"]["bound"].as_f64().unwrap() - 4.0).abs() < 1e-6);
    assert_eq!(e["report"]["chromatic"], 4);
    assert_eq!(e["report"]["sharp"], true);
}

#[test]
fn verify_random_instance_is_sound() {
    let v = json(&hyperchrom(&["verify", "--family", "random:c=3,n=8,m=6,seed=7", "--mode", "strong"]));
    let bound = v["report"]["bound"].as_f64().unwrap();
    assert!(bound <= v["report"]["chromatic"].as_f64().unwrap() + 1e-6);
    assert_eq!(v["report"]["violation"], false);
}

#[test]
fn verify_csv_has_fixed_columns() {
    let out = hyperchrom(&["verify", "--family", "examplea0", "--mode", "strong", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,mode,lambda1,lambda_n_or_mu1,bound,chi,gap,sharp,status"));
    assert!(lines.next().unwrap().starts_with("examplea0,strong,1.0,1.0,1.0,4,"));
}

#[test]
fn batch_random_corpus_has_no_violations() {
    let out =
        hyperchrom(&["batch", "--corpus", "random:c=3,n=8,m=6", "--count", "100", "--modes", "strong,d-proper:2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 201);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("violations=0"), "{summary}");
}

#[test]
fn batch_family_grid_matches_closed_forms() {
    let out =
        hyperchrom(&["batch", "--corpus", "hyperflower:c=3..6,p=1..4,k=1", "--modes", "strong", "--format", "json"]);
    assert!(out.status.success());
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r["status"] == "exact" && r["sharp"] == true));
    assert!(String::from_utf8(out.stderr).unwrap().contains("oracle_mismatches=0"));
}

#[test]
fn batch_empty_corpus_is_header_only() {
    let out = hyperchrom(&["batch", "--corpus", "random:c=3,n=8,m=6", "--count", "0"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "instance,mode,lambda1,lambda_n_or_mu1,bound,chi,gap,sharp,status\n"
    );
}

#[test]
fn batch_marks_inapplicable_modes() {
    let out = hyperchrom(&["batch", "--corpus", "examplea0;complete:n=4", "--modes", "d-improper:0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("examplea0,d-improper:0,,,,,,,mode-mismatch"));
    assert!(text.contains("complete:n=4,d-improper:0,"));
}

#[test]
fn batch_reads_a_directory_and_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    for (name, spec) in [("a.json", "hyperflower:c=3,p=2,k=1"), ("b.json", "examplea0")] {
        let out = corpus.join(name);
        let status = hyperchrom(&["gen", spec, "--out", out.to_str().unwrap()]);
        assert!(status.status.success());
    }
    fs::write(corpus.join("notes.txt"), "ignored").unwrap();
    let csv_path = dir.path().join("out.csv");
    let out = hyperchrom(&["batch", "--corpus", corpus.to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("a.json,strong"));
    assert!(lines[2].starts_with("b.json,strong"));
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 2, "{leftovers:?}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["spectrum", "--family", "random:c=3,n=8,m=7,seed=3"][..],
        &["chromatic", "--family", "random:c=3,n=8,m=7,seed=3", "--mode", "d-proper:2"],
        &["verify", "--family", "random:c=3,n=8,m=7,seed=3", "--mode", "strong"],
        &["batch", "--corpus", "random-mixed:n=7,m=6,cmax=4", "--count", "20", "--modes", "strong,edge-strong"],
    ] {
        assert_eq!(hyperchrom(args).stdout, hyperchrom(args).stdout, "{args:?}");
    }
}

#[test]
fn gen_round_trips_through_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    assert!(hyperchrom(&["gen", "multipartite:c=3,s=2,k=3", "--out", path.to_str().unwrap()]).status.success());
    assert!(Path::new(&path).exists());
    let from_file = hyperchrom(&["spectrum", path.to_str().unwrap()]);
    let from_family = hyperchrom(&["spectrum", "--family", "multipartite:c=3,s=2,k=3"]);
    assert_eq!(from_file.stdout, from_family.stdout);
}
