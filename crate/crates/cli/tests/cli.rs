use std::path::PathBuf;
use std::process::{Command, Output};

fn jobs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/jobs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablewitt")).args(args).output().expect("binary runs")
}

fn run_job(name: &str) -> Output {
    let path = jobs_dir().join(format!("{name}.job"));
    run(&["--job", path.to_str().unwrap()])
}

const GOLDEN: [(&str, i32); 12] = [
    ("katz_ordinary", 0),
    ("curve_congruence_ordinary", 0),
    ("curve_congruence_supersingular", 1),
    ("r0_ordinary", 0),
    ("glued_planes", 0),
    ("complement_conic", 0),
    ("etale_ordinary", 0),
    ("group_cohomology", 0),
    ("cohomology_f4", 0),
    ("malformed", 2),
    ("singular_curve", 2),
    ("count_budget", 3),
];

#[test]
fn golden_jobs_match_exit_codes_and_reports() {
    for (name, code) in GOLDEN {
        let out = run_job(name);
        assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let expected = std::fs::read_to_string(jobs_dir().join(format!("{name}.out"))).unwrap();
        assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["curve_congruence_ordinary", "cohomology_f4", "r0_ordinary"] {
        assert_eq!(run_job(name).stdout, run_job(name).stdout, "{name}");
    }
    let a = run(&["--selftest", "--suite", "stable-nil", "--seed", "3"]);
    let b = run(&["--selftest", "--suite", "stable-nil", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("selftest seed: 3"));
}

#[test]
fn diagnostics_go_to_stderr() {
    let out = run_job("malformed");
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    let out = run_job("count_budget");
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn key_report_fields() {
    let s = String::from_utf8(run_job("katz_ordinary").stdout).unwrap();
    for line in ["trace: 0", "count: 4", "modulus: 2^1 = 2", "verdict: pass"] {
        assert!(s.lines().any(|l| l == line), "{line}");
    }
    let s = String::from_utf8(run_job("glued_planes").stdout).unwrap();
    assert!(s.contains("H1_c.stable_rank: 1"));
    let s = String::from_utf8(run_job("curve_congruence_supersingular").stdout).unwrap();
    assert!(s.contains("verdict: hypothesis-fails") && s.contains("obstruction_degree: 1"));
}

#[test]
fn selftest_suite_filter_and_negative_control() {
    let out = run(&["--selftest", "--suite", "groupcoh"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("suite groupcoh") && !s.contains("suite katz"));
    let bad = run(&["--selftest", "--suite", "witt", "--corrupt-laws"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("suite witt: 532 cases"));
}

#[test]
fn budget_and_pole_bound_flags() {
    let path = jobs_dir().join("katz_ordinary.job");
    let out = run(&["--job", path.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    // a pole bound below the need is raised to 3d = 9, which still suffices at n = 2
    let path = jobs_dir().join("curve_congruence_ordinary.job");
    let out = run(&["--job", path.to_str().unwrap(), "--pole-bound", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--job", "/nonexistent/job"]).status.code(), Some(2));
    assert_eq!(run(&["--selftest", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.txt");
    let path = jobs_dir().join("group_cohomology.job");
    let out = run(&["--job", path.to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&target).unwrap(), out.stdout);
}
