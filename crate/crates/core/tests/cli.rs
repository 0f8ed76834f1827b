//! The `fatgraph` binary end to end.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use fatgraph_core::build_xk;
use fatgraph_core::json::graph_to_string;
use serde_json::Value;

const THETA: &str = r#"{"rotation":[[0,2,4],[1,5,3]],"pairing":[[0,1],[2,3],[4,5]]}"#;

fn fatgraph(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fatgraph"))
        .args(args)
        .env_remove("FATGRAPH_CACHE_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn xk_json(k: usize) -> String {
    let (g, o) = build_xk(k);
    graph_to_string(&g, &o)
}

#[test]
fn verify_exit_codes() {
    let out = fatgraph(&["verify", "--k", "5"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pairing"], "-1/5");

    let out = fatgraph(&["verify", "--k", "7"], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["cycle_ok"], true);
    assert!(report["pairing"].is_null());

    assert_eq!(fatgraph(&["verify", "--k", "4"], None).status.code(), Some(2));
    assert_eq!(fatgraph(&["verify"], None).status.code(), Some(2));
    assert_eq!(fatgraph(&["no-such-command"], None).status.code(), Some(2));
}

#[test]
fn euler_examples() {
    for (m, chi) in [("1", 1), ("3", 1), ("4", 0)] {
        let out = fatgraph(&["euler", "--g", "1", "--m", m], None);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json_of(&out)["euler_characteristic"], chi, "m = {m}");
    }
}

#[test]
fn resource_cap_exit_code() {
    let out = fatgraph(&["--max-darts", "10", "euler", "--g", "1", "--m", "4"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn graph_tools() {
    let out = fatgraph(&["graph", "genus"], Some(THETA));
    assert_eq!(json_of(&out), serde_json::json!({ "g": 0, "m": 3 }));

    let out = fatgraph(&["graph", "faces"], Some(THETA));
    assert_eq!(json_of(&out)["count"], 3);

    let out = fatgraph(&["graph", "canon"], Some(&xk_json(5)));
    assert_eq!(out.status.code(), Some(0));
    let canon = json_of(&out);
    assert_eq!(canon["zero"], false);
    // the canonical graph is a fixed point
    let again = fatgraph(&["graph", "canon"], Some(&canon["graph"].to_string()));
    assert_eq!(json_of(&again)["code"], canon["code"]);
    assert_eq!(json_of(&again)["sign"], 1);

    let out = fatgraph(&["graph", "boundary"], Some(&xk_json(1)));
    assert_eq!(json_of(&out)["terms"], serde_json::json!([]));

    // trivalent graphs cannot be expanded
    let out = fatgraph(&["graph", "expand"], Some(THETA));
    assert_eq!(json_of(&out)["count"], 0);
    let out = fatgraph(&["graph", "expand"], Some(&xk_json(5)));
    assert!(json_of(&out)["count"].as_u64().unwrap() > 0);
}

#[test]
fn malformed_json_is_a_usage_error() {
    let out = fatgraph(&["graph", "genus"], Some("{\"rotation\": [[0,1,2]],\n \"pairing\": [[0,1], oops]}"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    let out = fatgraph(&["graph", "genus"], Some(r#"{"rotation":[[0,1]],"pairing":[[0,1]],"extra":1}"#));
    assert_eq!(out.status.code(), Some(2));
    let out = fatgraph(&["graph", "genus"], Some(r#"{"rotation":[[0,1]],"pairing":[[0,1]]}"#));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_hits_match_misses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["--cache-dir", path, "betti", "--g", "1", "--m", "2"];
    let cold = fatgraph(&args, None);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = fatgraph(&args, None);
    let plain = fatgraph(&["betti", "--g", "1", "--m", "2"], None);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, plain.stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let one = fatgraph(&["--threads", "1", "enumerate", "--g", "1", "--m", "2", "--k", "3"], None);
    let four = fatgraph(&["--threads", "4", "enumerate", "--g", "1", "--m", "2", "--k", "3"], None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn config_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    std::fs::write(&good, "format = \"csv\"\nmax_darts = 24\n").unwrap();
    let out = fatgraph(&["--config", good.to_str().unwrap(), "enumerate", "--g", "1", "--m", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("edges,isomorphism_classes,nonzero,vertices\n"), "{text}");

    // the command line wins over the file
    let out = fatgraph(&["--config", good.to_str().unwrap(), "--format", "text", "euler", "--g", "1", "--m", "1"], None);
    assert!(String::from_utf8(out.stdout).unwrap().contains("euler_characteristic: 1"));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "max_dart = 24\n").unwrap();
    let out = fatgraph(&["--config", bad.to_str().unwrap(), "euler", "--g", "1", "--m", "1"], None);
    assert_eq!(out.status.code(), Some(2));

    let zero = dir.path().join("zero.toml");
    std::fs::write(&zero, "threads = 0\n").unwrap();
    let out = fatgraph(&["--config", zero.to_str().unwrap(), "euler", "--g", "1", "--m", "1"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symplectic_checks() {
    let out = fatgraph(&["xi-check", "--k", "5", "--n", "2", "--samples", "10", "--seed", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["e_value"], "-4/1");
    assert_eq!(r["seed"], 3);
    assert_eq!(fatgraph(&["xi-check", "--k", "7"], None).status.code(), Some(2));

    let out = fatgraph(&["bracket-check", "--max-degree", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["jacobi"], true);
}
