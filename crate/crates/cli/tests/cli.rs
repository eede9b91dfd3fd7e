use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vlnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vlnc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn emit(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file).to_string_lossy().into_owned();
    let mut full = vec!["zoo", "emit"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert_eq!(vlnc(&full).status.code(), Some(0));
    path
}

const CYCLE: &str = "name loop
node s source
node a inner
node b inner
node t terminal
edge e0 s a
edge e1 a b
edge e2 b a
edge e3 b t
demand t s
";

#[test]
fn emitted_m2_file_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit(dir.path(), "m2.net", &["m2"]);
    let out = vlnc(&["validate", "--net", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn cycles_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.net");
    fs::write(&path, CYCLE).unwrap();
    let out = vlnc(&["validate", "--net", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("CycleDetected"));
}

#[test]
fn missing_demand_source_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.net");
    fs::write(&path, "name bad\nnode s source\nnode t terminal\nedge e s t\ndemand t s z\n").unwrap();
    let out = vlnc(&["validate", "--net", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("UnknownDemandSource"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.net");
    fs::write(&path, "name junk\nnode s source\nbogus line\n").unwrap();
    let out = vlnc(&["validate", "--net", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn verify_reports_pass_and_failing_terminal() {
    let out = vlnc(&["verify", "--net", "n1:2", "--code", "zoo:dim2", "--field", "2", "--polymatroid"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
    assert!(stdout(&out).contains("D1-D4: ok"));

    let out = vlnc(&["verify", "--net", "char-qs:2", "--code", "zoo:charp", "--field", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL at r5"));

    let out = vlnc(&["verify", "--net", "n1:2", "--code", "zoo:ring16"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_reads_files_and_rejects_domain_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let net = emit(dir.path(), "m2.net", &["m2"]);
    let code = emit(dir.path(), "m2.code", &["m2", "--code", "dim2", "--field", "3"]);
    let out = vlnc(&["verify", "--net", &net, "--code", &code, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let out = vlnc(&["verify", "--net", &net, "--code", &code, "--field", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // A code for another network is an input error, not a failed check.
    let other = emit(dir.path(), "cq.code", &["char-qs:2", "--code", "additive", "--field", "2"]);
    let out = vlnc(&["verify", "--net", &net, "--code", &other]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_census_and_probe_verdicts() {
    let out = vlnc(&["solve", "--net", "m2", "--field", "2", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("UNSOLVABLE"));

    let out = vlnc(&["census", "--net", "char-qs:2", "--field", "3", "--dim", "1", "--predicate", "zero(s,e1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("ALL-SATISFY"));

    let out = vlnc(&["probe", "--net", "char-m:2", "--dim", "1", "--fields", "2,3,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let got: Vec<(String, String)> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["domain"].as_str().unwrap().to_string(), r["status"].as_str().unwrap().to_string()))
        .collect();
    let want = [("2^1", "SOLVABLE"), ("3^1", "UNSOLVABLE"), ("5^1", "UNSOLVABLE")];
    assert_eq!(got, want.map(|(d, s)| (d.to_string(), s.to_string())));
}

#[test]
fn solved_codes_are_emitted_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("m2.code");
    let out = vlnc(&["solve", "--net", "m2", "--field", "2", "--dim", "2", "--emit-code", code.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = vlnc(&["verify", "--net", "m2", "--code", code.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oversized_searches_are_inconclusive_with_size() {
    let out = vlnc(&["solve", "--net", "char-qs:2", "--field", "3", "--normalize", "false"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.097e11"));
}

#[test]
fn manifest_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = vlnc(&["--manifest", path.to_str().unwrap(), "solve", "--net", "m2", "--field", "2", "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["command"], "solve");
    assert_eq!(m["outcome"], "UNSOLVABLE");
    assert_eq!(m["exit_code"], 1);
    assert_eq!(m["inputs"][0]["origin"], "zoo:m2");
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(m["parameters"]["solve"]["field"], "2");

    // Every invocation writes one, including failed ones.
    let out = vlnc(&["--manifest", path.to_str().unwrap(), "validate", "--net", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["exit_code"], 2);
}

#[test]
fn recipe_is_conditionally_unsolvable() {
    let out = vlnc(&["recipe", "--q", "2", "--field", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("CONDITIONALLY-UNSOLVABLE"));
}
