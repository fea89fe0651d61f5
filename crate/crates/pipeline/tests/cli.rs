use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn angmom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_angmom"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_hilbert_and_groebner() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q.txt");
    let out = angmom(&[
        "generate",
        "--k",
        "2",
        "--n",
        "2",
        "--kind",
        "quadratic",
        "-o",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&file).unwrap().contains("# Q[3,4]"));

    let out = angmom(&["hilbert", path(&file), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rendered"], "(1 + 4t^2 + 4t^4 + t^6) / (1 - t^2)^6");
    assert_eq!(v["laurent"][0], "5/32");

    let gb = dir.path().join("gb.txt");
    for order in ["lex", "grlex", "grevlex"] {
        let out = angmom(&["groebner", path(&file), "--order", order, "-o", path(&gb)]);
        assert_eq!(out.status.code(), Some(0), "{order}");
        let out = angmom(&["hilbert", path(&gb), "--order", order]);
        assert!(
            stdout(&out).contains("(1 + 4t^2 + 4t^4 + t^6) / (1 - t^2)^6"),
            "{order}"
        );
    }
}

#[test]
fn eliminate_uses_the_cache_and_report_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let cache = path(dir.path());
    let out = angmom(&["report", "--k", "2", "--n", "1", "--cache-dir", cache]);
    assert_eq!(out.status.code(), Some(3));

    let out = angmom(&["eliminate", "--k", "2", "--n", "1", "--cache-dir", cache, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let first: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(first["verdict"], "equal");
    assert_eq!(first["elimination_generators"].as_array().unwrap().len(), 20);

    let out = angmom(&["eliminate", "--k", "2", "--n", "1", "--cache-dir", cache, "--json"]);
    let second: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(second, first);

    let out = angmom(&["report", "--k", "2", "--n", "1", "--cache-dir", cache]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict       equal"));
}

#[test]
fn input_errors_exit_with_three() {
    assert_eq!(
        angmom(&["eliminate", "--k", "1", "--n", "1", "--group", "SO"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        angmom(&["eliminate", "--k", "2", "--n", "3", "--group", "SO"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(angmom(&["eliminate", "--k", "0", "--n", "1"]).status.code(), Some(3));
    assert_eq!(
        angmom(&["eliminate", "--k", "1", "--n", "1", "--order", "bogus"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(angmom(&["hilbert", "/nonexistent/file"]).status.code(), Some(3));
    assert_eq!(angmom(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(angmom(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_mutations_with_exit_one() {
    let out = angmom(&["verify", "--k-max", "2", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(", 0 failures"));
    let out = angmom(&["verify", "--k-max", "2", "--n-max", "1", "--mutate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAILED"));
}

#[test]
fn certify_prints_verified_combinations() {
    let out = angmom(&["certify", "--k", "2", "--rows", "2,3,4", "--cols", "2,3,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "minor(2,3,4;2,3,4) = (x[2,4]) * Q[2,3] + (-x[2,3]) * Q[2,4] + (x[2,2]) * Q[3,4]"
    );
    let out = angmom(&["certify", "--k", "3", "--sample", "5", "--seed", "7", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let certs = v.as_array().unwrap();
    assert_eq!(certs.len(), 5);
    assert!(certs.iter().all(|c| c["verified"] == true));
}

#[test]
fn bench_compares_orders() {
    let out = angmom(&[
        "bench",
        "--k",
        "1",
        "--n",
        "1",
        "--orders",
        "lex,grevlex,block,paper",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["identical"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}
