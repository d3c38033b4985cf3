use std::fs;
use std::path::PathBuf;
use std::process::Command;

use strata_core::cli::{parse_rat_vec, run};
use tempfile::TempDir;

const A1: &str = "cartan_type = \"A1\"\nlattice = \"simply_connected\"\n";
const A1_INNER: &str = r#"
cartan_type = "A1"
lattice = "adjoint"

[twist]
omega = "p"

[omega_labels]
p = [1]
"#;

fn config(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn strata(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["strata"];
    argv.extend_from_slice(args);
    run(argv).map_err(|e| e.to_string())
}

#[test]
fn classify_translation() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["classify", "--datum", &a1, "--element", "s0 s1"]).unwrap();
    assert!(out.contains("nu_bar: [2]\n"), "{out}");
    assert!(out.contains("kappa: []\n"), "{out}");
    assert!(out.contains("straight: true\n"), "{out}");
    assert!(out.contains("length: 2\n"), "{out}");
}

#[test]
fn fiber_of_identity() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["fiber", "--datum", &a1, "--element", ""]).unwrap();
    assert!(out.ends_with("N_nu: 3\n"), "{out}");
    for label in ["label: e", "label: s0", "label: s1"] {
        assert!(out.contains(label), "{out}");
    }
    let json = strata(&["--format", "structured", "fiber", "--datum", &a1, "--element", ""]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["N_nu"], 3);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn cocenter_example() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["cocenter", "--datum", &a1, "--element", "s0 s1 s0"]).unwrap();
    assert_eq!(out, "(q) * [s1]\n(-1 + q) * [s0 s1]\n");
    let rev = strata(&["cocenter", "--datum", &a1, "--element", "s0 s1 s0", "--pivot", "reversed"]).unwrap();
    assert_eq!(rev, out);
}

#[test]
fn grade_and_trace() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["--format", "structured", "grade", "--datum", &a1, "--element", "s0 s1 s0"]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let out = strata(&["trace-check", "--datum", &a1, "--x", "s0", "--y", "s1"]).unwrap();
    assert!(out.starts_with("agree: true\n"), "{out}");
    let inner = config(&d, "inner.toml", A1_INNER);
    let out = strata(&["trace-check", "--datum", &inner, "--x", "p", "--y", "s0"]).unwrap();
    assert!(out.starts_with("agree: true\n"), "{out}");
}

#[test]
fn reduce_reports_path_and_dot() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["reduce", "--datum", &a1, "--element", "s0 s1 s0"]).unwrap();
    assert!(out.contains("minimal_element: s1\n"), "{out}");
    assert!(out.contains("length_change: -2"), "{out}");
    let dot = strata(&["--format", "dot", "reduce", "--datum", &a1, "--element", "s0 s1 s0"]).unwrap();
    assert!(dot.starts_with("digraph reduction {"), "{dot}");
    assert!(dot.contains("style=solid"), "{dot}");
    let dot = strata(&["--format", "dot", "fiber", "--datum", &a1, "--element", "s0 s1"]).unwrap();
    assert!(dot.contains("style=dashed"), "{dot}");
    assert!(strata(&["--format", "dot", "nmax", "--datum", &a1]).is_err());
}

#[test]
fn rigid_commands() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let out = strata(&["rigid-pairs", "--datum", &a1]).unwrap();
    assert_eq!(out, "pairs:\n  - K: []\n    tau: e\n  - K: [0]\n    tau: e\n  - K: [1]\n    tau: e\n");
    let inner = config(&d, "adj.toml", "cartan_type = \"A1\"\nlattice = \"adjoint\"\n[omega_labels]\np = [1]\n");
    let out = strata(&["rigid-pairs", "--datum", &inner]).unwrap();
    assert!(out.ends_with("  - K: []\n    tau: p\n"), "{out}");
    let out = strata(&["rigid-cover", "--datum", &a1, "--element", "s0"]).unwrap();
    assert!(out.contains("K: [0]"), "{out}");
    let err = strata(&["rigid-cover", "--datum", &a1, "--element", "s0 s1"]).unwrap_err();
    assert!(err.starts_with("rigid: "), "{err}");
    let out = strata(&["dcosets", "--datum", &a1, "--k", "0", "--k2", "1", "--bound", "2"]).unwrap();
    assert_eq!(out, "reps:\n  - e\n  - s1 s0\n");
    let out = strata(&["nmax", "--datum", &a1]).unwrap();
    assert_eq!(out, "nmax: 1\n");
    let out = strata(&["triples", "--datum", &a1, "--element", "s0 s1"]).unwrap();
    assert!(out.contains("product: s1 s0"), "{out}");
}

#[test]
fn errors_are_module_qualified() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let err = strata(&["classify", "--datum", &a1, "--element", "s0 x"]).unwrap_err();
    assert_eq!(err, "weyl: unknown token `x`");
    let bad = config(&d, "bad.toml", "cartan_type = \"A1\"\nlattice = [[4]]\n");
    let err = strata(&["nmax", "--datum", &bad]).unwrap_err();
    assert_eq!(err, "root_datum: lattice does not contain Q∨");
    let err = strata(&["nmax", "--datum", "/nonexistent/x.toml"]).unwrap_err();
    assert!(err.starts_with("config: cannot read"), "{err}");
    let broken = config(&d, "broken.toml", "cartan_type = \"A1\"\nlattice = \n");
    let err = strata(&["nmax", "--datum", &broken]).unwrap_err();
    assert!(err.contains("line 2"), "{err}");
    assert!(strata(&["frobnicate"]).unwrap_err().starts_with("cli: "));
}

#[test]
fn binary_exit_codes_and_determinism() {
    let d = TempDir::new().unwrap();
    let a1 = config(&d, "a1.toml", A1);
    let bin = env!("CARGO_BIN_EXE_strata");
    let ok = Command::new(bin).args(["fiber", "--datum", &a1, "--element", "s0 s1"]).output().unwrap();
    assert!(ok.status.success());
    let again = Command::new(bin).args(["fiber", "--datum", &a1, "--element", "s0 s1"]).output().unwrap();
    assert_eq!(ok.stdout, again.stdout);
    let bad = Command::new(bin).args(["fiber", "--datum", &a1, "--element", "s7"]).output().unwrap();
    assert!(!bad.status.success());
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown token `s7`"));
}

#[test]
fn rational_vectors_round_trip() {
    let d = TempDir::new().unwrap();
    let inner = config(&d, "inner.toml", A1_INNER);
    let out = strata(&["classify", "--datum", &inner, "--element", "s0"]).unwrap();
    let line = out.lines().find(|l| l.starts_with("nu: ")).unwrap();
    let v = parse_rat_vec(line.trim_start_matches("nu: ")).unwrap();
    assert_eq!(v, strata_core::lattice::rational_vec(&[1]));
    let a2 = config(&d, "a2.toml", "cartan_type = \"A2\"\nlattice = \"simply_connected\"\n");
    let out = strata(&["classify", "--datum", &a2, "--element", "s0 s1 s2"]).unwrap();
    assert!(out.contains("nu_bar: [0, 3/2]"), "{out}");
}
