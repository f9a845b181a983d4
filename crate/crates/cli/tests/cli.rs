use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mzv(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .arg("--cache")
        .arg(cache)
        .args(args)
        .env_remove("MZV_CACHE")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn canonical(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let obj = v.as_object_mut().unwrap();
    obj.remove("run");
    for r in obj["results"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("wall_ms");
    }
    v
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.ndjson");
    assert_eq!(code(&mzv(&cache, &["eval", "z(2,1)"])), 3);
    assert_eq!(code(&mzv(&cache, &["eval", "z(2,"])), 2);
    assert_eq!(code(&mzv(&cache, &["eval", "z(2)", "--tol", "1e-31"])), 2);
    assert_eq!(code(&mzv(&cache, &["--max-terms", "8", "eval", "z(1,2)", "--tol", "1e-20"])), 4);
    assert_eq!(code(&mzv(&cache, &["verify", "--suite", "no-such-family"])), 2);
    assert_eq!(code(&mzv(&cache, &["verify", "--suite", "zstar3-2n-plain-twos", "--p-max", "3", "--quiet"])), 1);
    let ok = mzv(&cache, &["eval", "z(2)", "--tol", "1e-12"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("1.644934066848"));
}

#[test]
fn algebra_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.ndjson");
    assert_eq!(stdout(&mzv(&cache, &["dual", "z(1,1,1,2)"])).trim(), "z(5)");
    assert_eq!(stdout(&mzv(&cache, &["shuffle", "z(2)", "z(2)"])).trim(), "2*z(2,2) + 4*z(1,3)");
    assert_eq!(stdout(&mzv(&cache, &["star", "zs(2,2)"])).trim(), "z(2,2) + z(4)");
    let list = stdout(&mzv(&cache, &["list-identities"]));
    assert!(list.contains("main-theorem") && list.contains("euler-special:teo"));
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("sub").join("values.ndjson");
    assert!(stdout(&mzv(&cache, &["cache", "stats"])).contains("entries  0"));
    assert_eq!(code(&mzv(&cache, &["verify", "--suite", "sec6", "--p-max", "2", "--quiet"])), 0);
    let stats = stdout(&mzv(&cache, &["cache", "stats"]));
    assert!(!stats.contains("entries  0"), "{stats}");
    assert_eq!(code(&mzv(&cache, &["cache", "rebuild"])), 0);

    let mut text = std::fs::read_to_string(&cache).unwrap();
    let good_lines = text.lines().count();
    text.push_str("{not json\n");
    std::fs::write(&cache, text).unwrap();
    let bad = mzv(&cache, &["cache", "rebuild"]);
    assert_eq!(code(&bad), 5);
    assert!(stderr(&bad).contains(&format!("line {}", good_lines + 1)), "{}", stderr(&bad));

    let fixed = mzv(&cache, &["cache", "rebuild", "--drop-corrupt"]);
    assert_eq!(code(&fixed), 0, "{}", stderr(&fixed));
    assert_eq!(code(&mzv(&cache, &["cache", "rebuild"])), 0);
}

#[test]
fn report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.ndjson");
    let report = dir.path().join("report.json");
    let csv = dir.path().join("report.csv");
    let out = mzv(
        &cache,
        &[
            "verify", "--suite", "euler-family", "--p-max", "3", "--q-max", "1", "--lambda", "0,-2,3/2",
            "--report", report.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["report_version", "config", "results", "summary"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let n = v["results"].as_array().unwrap().len();
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, n);
    // p <= 3, q <= min(p, 1), three lambdas
    assert_eq!(n, 7 * 3);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), n + 1);
}

#[test]
fn failing_run_still_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.ndjson");
    let report = dir.path().join("report.json");
    let out = mzv(
        &cache,
        &["verify", "--suite", "zstar3-2n-plain-twos", "--p-max", "3", "--report", report.to_str().unwrap()],
    );
    assert_eq!(code(&out), 1);
    let v = canonical(&report);
    assert!(v["summary"]["failed"].as_u64().unwrap() >= 1);
}

#[test]
fn reports_are_deterministic_across_workers_and_cache_state() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, cache: &str, workers: &str| {
        let report = dir.path().join(name);
        let out = mzv(
            &dir.path().join(cache),
            &["--workers", workers, "verify", "--suite", "all", "--p-max", "2", "--quiet", "--report", report.to_str().unwrap()],
        );
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        canonical(&report)
    };
    let cold = run("a.json", "one.ndjson", "1");
    let warm = run("b.json", "one.ndjson", "4");
    let fresh = run("c.json", "two.ndjson", "4");
    assert_eq!(cold, warm);
    assert_eq!(cold, fresh);
}
