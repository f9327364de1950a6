use std::process::{Command, Output};

use moduli_topology::report::InvariantReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli-topology"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn two_points_as_json() {
    let out = run(&[
        "invariants",
        "-g",
        "1",
        "-N",
        "2",
        "-D",
        "0",
        "-d",
        "0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains(r#""dimension":0,"euler":2,"betti":[2]"#),
        "{text}"
    );
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for key in ["params", "dimension", "euler", "betti", "spectral", "flags"] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert!(!keys.contains(&"hodge"));
}

#[test]
fn genus_five_table() {
    let out = run(&["invariants", "-g", "2", "-N", "2", "-D", "0", "-d", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("euler          -8"), "{text}");
    assert!(text.contains("betti          [1, 10, 1]"), "{text}");
}

#[test]
fn point_for_rank_one() {
    let out = run(&[
        "invariants",
        "-g",
        "1",
        "-N",
        "1",
        "-D",
        "0",
        "-d",
        "0",
        "--format",
        "json",
    ]);
    let report = InvariantReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.dimension, 0);
    assert_eq!(report.betti, vec![1.into()]);
}

#[test]
fn negative_degrees_and_long_flags() {
    let out = run(&[
        "invariants",
        "--genus",
        "3",
        "--rank",
        "2",
        "--deg-E",
        "-2",
        "--deg-L",
        "-1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("empty"));
}

#[test]
fn csv_with_hodge() {
    let out = run(&[
        "invariants",
        "-g",
        "2",
        "-N",
        "1",
        "-D",
        "0",
        "-d",
        "2",
        "--hodge",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("r,b_r\n0,1\n1,4\n2,7\n"), "{text}");
    assert!(text.contains("\np,q,h\n"));
    assert!(text.contains("1,1,5\n"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "invariants",
        "-g",
        "3",
        "-N",
        "2",
        "-D",
        "1",
        "-d",
        "2",
        "--hodge",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn explicit_stabilization() {
    let out = run(&[
        "invariants",
        "-g",
        "2",
        "-N",
        "2",
        "-D",
        "0",
        "-d",
        "1",
        "--K",
        "5",
        "--format",
        "json",
    ]);
    let report = InvariantReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.params.k, 5);
    assert_eq!(report.euler, (-8).into());
}

#[test]
fn invalid_arguments_exit_2() {
    for args in [
        vec!["invariants", "-g", "0", "-N", "2", "-D", "0", "-d", "0"],
        vec!["invariants", "-g", "1", "-N", "0", "-D", "0", "-d", "0"],
        vec!["invariants", "-g", "1", "-N", "2", "-D", "0"],
        vec![
            "invariants",
            "-g",
            "1",
            "-N",
            "2",
            "-D",
            "0",
            "-d",
            "0",
            "--format",
            "xml",
        ],
        vec![
            "invariants",
            "-g",
            "2",
            "-N",
            "2",
            "-D",
            "0",
            "-d",
            "1",
            "--K",
            "0",
        ],
        vec!["verify", "--suite", "nonsense"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn verify_suites_pass() {
    let out = run(&["verify", "--suite", "euler", "--max-genus", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("euler"));
    assert!(stdout(&out).contains("0 failed"));
    let out = run(&["verify", "--suite", "macdonald", "--max-genus", "4"]);
    assert!(out.status.success());
    let out = run(&["verify", "--suite", "km"]);
    assert!(out.status.success());
}

#[test]
fn verify_all_reports_every_suite() {
    let out = run(&[
        "verify",
        "--max-genus",
        "2",
        "--max-rank",
        "2",
        "--max-dim",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for suite in [
        "euler",
        "betti",
        "hodge",
        "km",
        "macdonald",
        "pushforward",
        "spectral",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(suite)),
            "{suite} missing in {text}"
        );
    }
}
