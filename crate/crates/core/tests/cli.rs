use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mlgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlgeom"))
        .args(args)
        .env_remove("MLGEOM_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = mlgeom(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn reference_values() {
    let v = json(&["coset-corollary", "--q", "160001", "--s", "20", "--r", "16"]);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["q"], 160001);

    let v = json(&["sharp-example", "--q", "13", "--s", "4"]);
    assert!(v["result"]["missing"].as_array().unwrap().contains(&1.into()));

    let v = json(&["vacuity", "--n", "4", "--l", "2", "--q", "7", "--alpha", "1/1"]);
    assert_eq!(v["result"]["feasible"], false);

    let v = json(&["min-r", "--q", "160001", "--s", "20"]);
    assert_eq!(v["result"]["min_r"], 16);
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("form.json");
    let set = dir.path().join("set.json");
    std::fs::write(
        &form,
        r#"{"q": 7, "d": 2, "n": 3, "entries": [{"index": [1,1,1], "value": 1}, {"index": [2,2,2], "value": 1}]}"#,
    )
    .unwrap();
    std::fs::write(&set, r#"{"q": 7, "d": 2, "points": [[1,2],[3,4],[5,6],[1,0],[0,1]]}"#).unwrap();
    let (f, s) = (form.to_str().unwrap(), set.to_str().unwrap());

    let v = json(&["nu", "--form", f, "--set", s]);
    assert_eq!(v["result"]["partition"], true);
    assert_eq!(v["request"]["set"]["points"].as_array().unwrap().len(), 5);

    let v = json(&["nondegenerate", "--form", f, "--k", "3", "--a", "0,0,0,1"]);
    assert_eq!(v["result"]["nondegenerate"], false);
    assert_eq!(v["result"]["witness"], serde_json::json!([1, 0]));

    let v = json(&["remainder", "--form", f, "--set", s, "--t", "3"]);
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 1);

    std::fs::write(&set, "{\"q\": 7,\n \"d\": 2,\n \"points\": [[1, 9]]}").unwrap();
    let out = mlgeom(&["projective-index", "--set", s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points[0]"));

    std::fs::write(&set, "{\"q\": 7,\n \"d\": 2,\n \"points\": [[1, 2],]}").unwrap();
    let out = mlgeom(&["projective-index", "--set", s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn exit_codes() {
    assert_eq!(mlgeom(&["coset-corollary", "--q", "7", "--s", "4", "--r", "1"]).status.code(), Some(2));
    assert_eq!(mlgeom(&["sharp-example", "--q", "5", "--s", "1"]).status.code(), Some(2));
    assert_eq!(mlgeom(&["sumproduct", "--q", "7", "--elements", "1", "--expr", "A-A"]).status.code(), Some(2));
    assert_eq!(
        mlgeom(&["--cap", "100", "cover", "--form", "dot(7,2,3)", "--set", "punctured(7,2)"]).status.code(),
        Some(3)
    );
    assert_eq!(mlgeom(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_checkable() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--primes", "3,5", "--random-sets", "1", "--random-omphaloi", "1"];
    let a = mlgeom(&args).stdout;
    let mut parallel = vec!["--workers", "3"];
    parallel.extend_from_slice(&args);
    let b = mlgeom(&parallel).stdout;
    assert_eq!(a, b);

    let path = dir.path().join("report.json");
    std::fs::write(&path, &a).unwrap();
    let out = mlgeom(&["check-report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matches"], true);

    let tampered = String::from_utf8(a).unwrap().replacen("\"violations\": 0", "\"violations\": 1", 1);
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(mlgeom(&["check-report", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn config_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "seed = 99\nformat = \"csv\"\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mlgeom"))
        .args(["sweep", "--primes", "3", "--random-sets", "1", "--random-omphaloi", "0"])
        .env("MLGEOM_CONFIG", &config)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q,d,n,set_size,r,alpha,lhs,rhs,satisfied,covered,remainder_ok,seed")
    );
    assert!(lines.all(|l| l.starts_with("3,") && l.ends_with(",99")));

    std::fs::write(&config, "seeds = 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mlgeom"))
        .args(["min-r", "--q", "7", "--s", "2"])
        .env("MLGEOM_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = mlgeom(&["-o", path.to_str().unwrap(), "sumproduct", "--q", "31", "--s", "6", "--r", "5"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["result"]["covers_nonzero"], true);
}
