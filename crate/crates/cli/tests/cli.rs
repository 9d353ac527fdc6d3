use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn matrix(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../matrices").join(name)
}

fn dyndeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyndeg"))
        .args(args)
        .env_remove("DYNDEG_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn psi_of_identity_is_two() {
    let o = dyndeg(&["psi", path(&matrix("I.mat")), "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2\n");
    let o = dyndeg(&["psi", path(&matrix("A1.mat"))]);
    assert_eq!(stdout(&o), "291\n");
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dyndeg"))
        .args(["psi", path(&matrix("A.mat"))])
        .env("DYNDEG_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "75\n");
}

#[test]
fn degree_table() {
    let o = dyndeg(&["degree", path(&matrix("A.mat"))]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("deg h_A       = 50"));
    assert!(s.contains("deg f_A      <= 150"));
    assert!(s.contains("[21, 3, 14, 12]"));
}

#[test]
fn lambda2_quadratic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l2.json");
    let o = dyndeg(&["lambda2", path(&matrix("A.mat")), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("polynomial: λ^2 - 224λ + 75"), "{s}");
    assert!(s.contains("λ₂ ≈ 223.6646"), "{s}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(json["onset"], 1);
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let det2 = dir.path().join("det2.mat");
    fs::write(&det2, "2 0 0\n0 1 0\n0 0 1\n").unwrap();
    let short = dir.path().join("short.mat");
    fs::write(&short, "# two rows\n1 0 0\n0 1 0\n").unwrap();
    for args in [
        vec!["psi", det2.to_str().unwrap()],
        vec!["degree", short.to_str().unwrap()],
        vec!["lambda2", "/nonexistent/A.mat"],
        vec!["psi", path(&matrix("I.mat")), "--step-cap", "10"],
        vec!["psi", path(&matrix("I.mat")), "--moduli", "9..5"],
        vec!["psi", path(&matrix("I.mat")), "--eps", "0"],
        vec!["orbit", path(&matrix("A.mat")), "--point", "1,2,3"],
        vec!["frobnicate"],
    ] {
        let o = dyndeg(&args);
        assert_eq!(code(&o), 3, "{args:?}");
    }
}

#[test]
fn identity_fails_the_cone_condition() {
    let o = dyndeg(&["cone-check", path(&matrix("I.mat"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fails at n = 1"));
}

#[test]
fn orbit_through_indeterminacy() {
    let o = dyndeg(&["orbit", path(&matrix("A.mat")), "--point", "1,2,3,5", "--steps", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("f^1(P)"));
    let o = dyndeg(&["orbit", path(&matrix("A.mat")), "--point", "1,1,1,1", "--steps", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("indeterminate"));
}

#[test]
fn forward_cone_needs_larger_moduli() {
    let o = dyndeg(&["lambda1", path(&matrix("A.mat"))]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("[1, 150]"));
}

#[test]
fn report_and_verify_a1() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("a1.json");
    let o = dyndeg(&["report", path(&matrix("A1.mat")), "--profile-d", "4", "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("λ₁ ∈ [291, 669] (transcendental: certified)"), "{s}");
    assert!(s.contains("λ₂ ≈ 174.6660"), "{s}");
    assert!(s.contains("verdict: 1-cohomologically hyperbolic"), "{s}");
    assert!(s.contains("profile d = 4"), "{s}");

    let o = dyndeg(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let text = fs::read_to_string(&cert).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    json["hyperbolicity"]["p"] = 2.into();
    let forged = dir.path().join("forged.json");
    fs::write(&forged, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let o = dyndeg(&["verify", forged.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));

    fs::write(&forged, "{").unwrap();
    assert_eq!(code(&dyndeg(&["verify", forged.to_str().unwrap()])), 3);
}
