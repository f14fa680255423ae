//! End-to-end CLI tests: exit codes (0 ok, 1 usage, 2 data, 3 verify),
//! output formats, determinism, config handling, and the fetch flow
//! against a one-shot local HTTP server.

use std::io::{Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
}

fn zeros_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_10000.txt")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("goldbach_cli_{name}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn goldbach")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn sieve_builds_and_caches() {
    let dir = tmp_dir("sieve");
    let cache = dir.join("lambda.bin");
    let out = run(&[
        "sieve",
        "--n-max",
        "50000",
        "--out",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(cache.exists());
    let out = run(&["sieve", "--check", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sieve_usage_errors() {
    let out = run(&["sieve", "--n-max", "0"]);
    assert_eq!(code(&out), 1);
    let out = run(&["sieve"]);
    assert_eq!(code(&out), 1);
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn corrupt_cache_is_a_data_error() {
    let dir = tmp_dir("corrupt");
    let cache = dir.join("lambda.bin");
    let out = run(&[
        "sieve",
        "--n-max",
        "30000",
        "--out",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut bytes = std::fs::read(&cache).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x41;
    std::fs::write(&cache, &bytes).unwrap();
    let out = run(&["sieve", "--check", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fujii_requires_zero_table() {
    let out = run(&["fujii", "--n-grid", "100"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fujii_emits_csv_and_json_with_matching_columns() {
    let zeros = zeros_path();
    let zeros = zeros.to_str().unwrap();
    let csv = run(&["fujii", "--zero-file", zeros, "--n-grid", "100,1000"]);
    assert_eq!(code(&csv), 0);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "N,prime_side,main_quadratic,zero_sum,linear_term,constant_term,\
         trivial_zero_sum,error_E,tail_bound,residual"
            .replace(' ', "")
    );
    assert_eq!(lines.count(), 2);

    let json = run(&[
        "fujii",
        "--zero-file",
        zeros,
        "--n-grid",
        "100,1000",
        "--format",
        "json",
    ]);
    assert_eq!(code(&json), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(|s| s.as_str())
        .collect();
    assert_eq!(keys, header.split(',').collect::<Vec<_>>());
    assert_eq!(rows[0]["N"], 100);
}

#[test]
fn fujii_verify_fails_on_degenerate_truncation() {
    // T below the first zero leaves no usable tail estimate: exit 3
    let zeros = zeros_path();
    let out = run(&[
        "fujii",
        "--zero-file",
        zeros.to_str().unwrap(),
        "--n-grid",
        "100",
        "--height",
        "14.1",
        "--verify",
    ]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_deterministic_across_runs() {
    let zeros = zeros_path();
    let args = [
        "fujii",
        "--zero-file",
        zeros.to_str().unwrap(),
        "--n-grid",
        "100,1000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "CSV bytes differ between runs");
}

#[test]
fn variance_rows_and_verify() {
    let out = run(&["variance", "--kind", "h", "--x-grid", "10,100", "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kind,x,param,value,normalizer,ratio\n"));
    assert_eq!(text.lines().count(), 3);

    let out = run(&[
        "variance", "--kind", "sv", "--x-grid", "100", "--h-grid", "10,25", "--verify",
    ]);
    assert_eq!(code(&out), 0);

    // grid with no valid (x, h) pairs is a data error
    let out = run(&[
        "variance", "--kind", "sv", "--x-grid", "100", "--h-grid", "50",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn odd_even_emits_grid() {
    let out = run(&["odd-even", "--n-grid", "500,2000"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,odd_sum,even_sum,cumulative,ratio_odd_over_2NlogN\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn paircorr_verify_on_real_table() {
    let zeros = zeros_path();
    let out = run(&[
        "paircorr",
        "--zero-file",
        zeros.to_str().unwrap(),
        "--x-mode",
        "sqrt-t",
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tmp_dir("config");
    let zeros = zeros_path();
    let cfg_path = dir.join("run.conf");
    std::fs::write(
        &cfg_path,
        format!(
            "zero_file = {}\nformat = json\n\n[grids]\nfujii_n = 100\n\n\
             [tolerances]\nfujii_tail_multiplier = 10\n",
            zeros.display()
        ),
    )
    .unwrap();
    let out = run(&["--config", cfg_path.to_str().unwrap(), "fujii", "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 1);

    // flag overrides config format
    let out = run(&[
        "--config",
        cfg_path.to_str().unwrap(),
        "--format",
        "csv",
        "fujii",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("N,"));

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "no_such_key = 1\n").unwrap();
    let out = run(&[
        "--config",
        bad.to_str().unwrap(),
        "odd-even",
        "--n-grid",
        "100",
    ]);
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_dir_writes_files() {
    let dir = tmp_dir("outdir");
    let out = run(&[
        "variance",
        "--kind",
        "h",
        "--x-grid",
        "10",
        "--output-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(dir.join("variance.csv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

/// One-shot HTTP server for the fetch tests.
fn serve_once(body: Vec<u8>) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        if let Ok((mut stream, _)) = listener.accept() {
            let mut buf = [0u8; 4096];
            let _ = stream.read(&mut buf);
            let head = format!(
                "HTTP/1.1 200 OK\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
                body.len()
            );
            let _ = stream.write_all(head.as_bytes());
            let _ = stream.write_all(&body);
        }
    });
    format!("http://{addr}/zeros.txt")
}

#[test]
fn fetch_zeros_happy_path_and_mismatch() {
    let dir = tmp_dir("fetch");
    let body = b"14.134725141734694\n21.022039638771555\n".to_vec();
    let sha = hex::encode(Sha256::digest(&body));

    let url = serve_once(body.clone());
    let out_path = dir.join("zeros.txt");
    let out = run(&[
        "fetch-zeros",
        "--url",
        &url,
        "--sha256",
        &sha,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&out_path).unwrap(), body);

    // checksum mismatch: exit 2 and no file left behind
    let url = serve_once(body);
    let bad_path = dir.join("bad.txt");
    let out = run(&[
        "fetch-zeros",
        "--url",
        &url,
        "--sha256",
        &"0".repeat(64),
        "--out",
        bad_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum mismatch"));
    assert!(!bad_path.exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fetch_zeros_network_unreachable() {
    let out = run(&[
        "fetch-zeros",
        "--url",
        "http://127.0.0.1:9/zeros.txt",
        "--sha256",
        &"0".repeat(64),
        "--out",
        "/tmp/goldbach_never_written.txt",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("network error"));
    assert!(!Path::new("/tmp/goldbach_never_written.txt").exists());
}

#[test]
fn cache_dir_env_var_sets_sieve_output() {
    let dir = tmp_dir("envcache");
    let out = bin()
        .args(["sieve", "--n-max", "2000"])
        .env("GOLDBACH_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("lambda_2000.bin").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bounds_small_grid() {
    let out = run(&["bounds", "--n-grid", "50,100", "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("N,M,n_trunc,curlyE,quad_uncertainty,E_exact,ratio_E_over_NlogcubeN\n")
    );
}
