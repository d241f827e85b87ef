use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SQ3: &str = r#"{"p": 3, "matrix": [[1]]}"#;
const DIAG135: &str = r#"{"p": 2, "matrix": [[1,0,0],[0,3,0],[0,0,5]]}"#;

#[test]
fn zeta_of_a_square() {
    let o = run(&["zeta", "--inline", SQ3]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("(2/3) / (1 - (1/3)*t^2)"));
}

#[test]
fn classify_diagonal() {
    let o = run(&["classify", "--inline", DIAG135]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Sq(1) + Hyp"), "{}", stdout(&o));
}

#[test]
fn verify_passes() {
    for input in [SQ3, DIAG135, r#"{"p": 5, "matrix": [[1,0],[0,5]], "linear": [0, 25], "constant": 5}"#] {
        let o = run(&["verify", "--K", "8", "--inline", input]);
        assert_eq!(o.status.code(), Some(0), "{input}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
        let o = run(&["verify", "--K", "6", "--format", "json", "--inline", input]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["oracle_prefix"], v["closed_form_prefix"]);
    }
}

#[test]
fn json_round_trip_is_exact() {
    for input in [SQ3, DIAG135, r#"{"p": 2, "f": 2, "matrix": [[0,1],[1,0]], "linear": [4, 0]}"#] {
        let o = run(&["zeta", "--format", "json", "--inline", input]);
        assert!(o.status.success());
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["zeta", "--inline", "not json"],
        vec!["zeta", "--inline", r#"{"p": 4, "matrix": [[1]]}"#],
        vec!["zeta", "--inline", r#"{"p": 3, "matrix": [[1]], "colour": 2}"#],
        vec!["zeta", "--inline", r#"{"p": 3, "matrix": [["1/3"]]}"#],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(v["error"].is_string());
    }
}

#[test]
fn other_subcommands_run() {
    for sub in ["reduce", "poles", "poincare", "gf"] {
        let o = run(&[sub, "--K", "3", "--inline", SQ3]);
        assert!(o.status.success(), "{sub}: {}", stdout(&o));
        assert!(!stdout(&o).trim().is_empty());
    }
    let o = run(&["gf", "--modular", "--K", "1", "--inline", SQ3]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0 : (1/3)\n1 : (2/3)");
}
