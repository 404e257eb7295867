use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn construct_succeeds() {
    let o = pade(&["construct", "--family", "chebyshev", "--u", "2", "--n", "2", "--h", "0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "construct");
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["config"]["family"], "chebyshev");
}

#[test]
fn verify_against_oracle() {
    let o = pade(&["verify", "--family", "chebyshev", "--u", "2", "--n", "2", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["result"]["oracle"]["kernel_dim"], 1);
    assert_eq!(doc["result"]["oracle"]["proportional"], true);
}

#[test]
fn zero_polynomial_exit() {
    let o = pade(&[
        "construct",
        "--family",
        "custom",
        "--a",
        "z^2",
        "--b",
        "-2z",
        "--n",
        "1",
    ]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn hypothesis_exit() {
    let o = pade(&[
        "construct",
        "--family",
        "hermite",
        "--gamma",
        "1",
        "--delta",
        "0",
        "--delta",
        "0",
        "--n",
        "1",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&pade(&["construct", "--n", "1"])), 1);
    assert_eq!(code(&pade(&["frobnicate"])), 1);
    assert_eq!(code(&pade(&["--help"])), 0);
}

#[test]
fn table_markdown_golden() {
    let o = pade(&["table", "--u", "2..15", "--format", "markdown"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), golden("threshold_table.md"));
}

#[test]
fn table_json_golden() {
    let o = pade(&["table", "--u", "2..15"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), golden("threshold_table.json"));
}

#[test]
fn det_hermite() {
    let o = pade(&[
        "det", "--family", "hermite", "--gamma", "3/2", "--delta", "0", "--delta", "1", "--n", "2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["match"], true);
}

#[test]
fn criterion_positive_v() {
    let o = pade(&[
        "criterion",
        "--u",
        "2",
        "--alpha",
        "64",
        "--place",
        "inf",
        "--eps",
        "0.1",
    ]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let v: f64 = doc["result"]["V"]["value"].as_str().unwrap().parse().unwrap();
    assert!(v > 0.0);
    assert_eq!(doc["result"]["V"]["bits"], 53);
}

#[test]
fn gop_residues() {
    let o = pade(&["gop", "--alpha", "1", "--alpha", "-1", "--beta", "0", "--gamma", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["residues"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "family = \"chebyshev\"\nu = \"2\"\nn = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = pade(&["construct", "--config", cfg]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["config"]["n"], 1);
    let o = pade(&["construct", "--config", cfg, "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["config"]["n"], 3);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "family = \"chebyshev\"\nbogus = 1\n").unwrap();
    assert_eq!(code(&pade(&["construct", "--config", bad.to_str().unwrap()])), 1);
}

#[test]
fn out_file_is_written_only_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("table.md");
    let o = pade(&["table", "--format", "markdown", "--out", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&good).unwrap(), golden("threshold_table.md"));

    let bad = dir.path().join("zero.json");
    let o = pade(&[
        "construct",
        "--family",
        "custom",
        "--a",
        "z^2",
        "--b",
        "-2z",
        "--n",
        "1",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(!bad.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
