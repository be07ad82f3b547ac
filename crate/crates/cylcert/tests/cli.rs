//! Exit-code contract and file round trips through the binary:
//! 0 success, 1 parse, 2 hypothesis rejection, 3 budget, 4 verification
//! failure.

use std::path::Path;
use std::process::Output;

fn run(args: &[&str], dir: &Path) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_cylcert"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

const DESK: &str = "\
n: 1
frame: simplex
f: x1 * y^2 + 1
gen: x1 - 1/4
gen: 3/4 - x1
";

#[test]
fn certify_verify_loop_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("desk.problem");
    std::fs::write(&problem, DESK).unwrap();

    let out = run(&["certify", "desk.problem"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("identity true"));
    assert!(dir.path().join("desk.cert.json").exists());
    assert!(dir.path().join("desk.bounds.txt").exists());

    std::fs::write(dir.path().join("f.txt"), "x1 * y^2 + 1\n").unwrap();
    std::fs::write(dir.path().join("gens.txt"), "x1 - 1/4\n3/4 - x1\n").unwrap();
    let out = run(&["verify", "f.txt", "gens.txt", "desk.cert.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("identity_ok: true"));
}

#[test]
fn parse_error_exit_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.problem"), "n: 1\nframe: simplex\nf: x1 + $\ngen: x1\n")
        .unwrap();
    let out = run(&["certify", "bad.problem"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
    // missing file is also a file-level error
    let out = run(&["certify", "nonexistent.problem"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hypothesis_rejection_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // (1 - x^2)^3 expanded; f not fully 2-ic on [-1, 1]
    let problem = "\
n: 1
frame: unit-box
f: y^2 - x1^2 * y^2 + 1
gen: 1 - 3 * x1^2 + 3 * x1^4 - x1^6
";
    std::fs::write(dir.path().join("ce.problem"), problem).unwrap();
    let out = run(&["certify", "ce.problem"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not fully"), "stderr: {stderr}");
}

#[test]
fn budget_exhaustion_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    // schedule fully capped below anything useful: the fallback needs the
    // formula k in the tens of thousands, far over the term budget
    let problem = format!("{DESK}max_N: 0\nmax_k: 0\nmax_lambda: 1\nterm_budget: 1000\n");
    std::fs::write(dir.path().join("capped.problem"), problem).unwrap();
    let out = run(&["certify", "capped.problem"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("budget"), "stderr: {stderr}");
}

#[test]
fn mutated_certificate_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("desk.problem"), DESK).unwrap();
    let out = run(&["certify", "desk.problem"], dir.path());
    assert_eq!(out.status.code(), Some(0));

    let cert_path = dir.path().join("desk.cert.json");
    let text = std::fs::read_to_string(&cert_path).unwrap();
    // perturb the first weight literal
    let mutated = text.replacen("\"weight\": \"1/1\"", "\"weight\": \"2/1\"", 1);
    assert_ne!(mutated, text, "a weight of 1/1 exists to perturb");
    std::fs::write(&cert_path, mutated).unwrap();

    std::fs::write(dir.path().join("f.txt"), "x1 * y^2 + 1\n").unwrap();
    std::fs::write(dir.path().join("gens.txt"), "x1 - 1/4\n3/4 - x1\n").unwrap();
    let out = run(&["verify", "f.txt", "gens.txt", "desk.cert.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("identity_ok: false"));
    assert!(stdout.contains("residual"), "residual printed: {stdout}");
}

#[test]
fn bounds_subcommand_runs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("desk.problem"), DESK).unwrap();
    let out = run(&["bounds", "desk.problem"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    for key in [
        "lambda:",
        "k:",
        "ell:",
        "N:",
        "k_bound:",
        "h_norm_bound:",
        "term_bound_module:",
        "term_bound_polya:",
        "c9:",
    ] {
        assert!(stdout.contains(key), "missing {key} in: {stdout}");
    }

    // univariate route note
    std::fs::write(
        dir.path().join("uni.problem"),
        "n: 1\nframe: simplex\nf: y^2 + 1\ngen: x1 - 1/4\ngen: 3/4 - x1\n",
    )
    .unwrap();
    let out = run(&["bounds", "uni.problem"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("univariate"));
}

#[test]
fn flag_overrides_apply() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("desk.problem"), DESK).unwrap();
    let out = run(
        &[
            "certify",
            "desk.problem",
            "--f-min",
            "1/4",
            "--loja",
            "1",
            "2",
            "--max-N",
            "32",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cert = std::fs::read_to_string(dir.path().join("desk.cert.json")).unwrap();
    assert!(cert.contains("\"f_min\": \"1/4\""));
    assert!(cert.contains("\"f_min_provenance\": \"user-supplied\""));
    assert!(cert.contains("\"loja_provenance\": \"user-supplied\""));
}

#[test]
fn demo_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["demo", "desk"], dir.path()).status.code(), Some(0));
    assert_eq!(
        run(&["demo", "counterexample"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["demo", "archimedean"], dir.path()).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["demo", "polya-minimal"], dir.path()).status.code(),
        Some(0)
    );
    assert_eq!(run(&["demo", "nope"], dir.path()).status.code(), Some(1));
}
