//! End-to-end checks of the `qample` binary: exit codes, JSON output,
//! and byte-deterministic SVG emission.

use std::process::Command;

fn qample() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qample"))
}

#[test]
fn usage_errors_exit_2() {
    let out = qample().args(["cohomology", "--divisor", "1,x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = qample()
        .args(["cohomology", "--geometry", "nonesuch", "--divisor", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = qample().args(["frobenius", "--algebra", "k", "--char", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_json_report() {
    let out = qample()
        .args(["cohomology", "--geometry", "p2", "--divisor", "-4", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!([0, 0, 3]));
}

#[test]
fn check_reports_exact_false_at_top_level() {
    let out = qample()
        .args([
            "check", "--geometry", "p1xp1", "--divisor", "-1,-1", "--q", "1", "--n-max", "6",
            "--format", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], serde_json::json!("ExactFalse"));
}

#[test]
fn svg_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.svg");
    let p2 = dir.path().join("b.svg");
    for p in [&p1, &p2] {
        let out = qample()
            .args([
                "scan", "--geometry", "p1xp1", "--q", "1", "--resolution", "6", "--n-max", "8",
                "--svg",
            ])
            .arg(p)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("slope"));
    assert!(text.contains("<path"));
}

#[test]
fn single_criterion_reproduction_exits_clean() {
    let out = qample().args(["reproduce-paper", "--criterion", "13"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    let out = qample().args(["reproduce-paper", "--criterion", "99"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    for _ in 0..2 {
        let out = qample()
            .args(["cohomology", "--geometry", "p1xp1", "--divisor", "3,4", "--format", "json"])
            .arg("--cache")
            .arg(&cache)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["dims"], serde_json::json!([20, 0, 0]));
    }
    assert!(cache.exists());
}
