//! End-to-end runs of the `regnum` binary: verdicts, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn regnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regnum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("regnum-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_file(&p);
    p
}

#[test]
fn m11_four_tuple_is_nonregular() {
    let o = regnum(&[
        "check-tuple",
        "M11",
        "M10",
        "M10",
        "L2(11)",
        "L2(11)",
        "--format",
        "machine",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict=NONREGULAR"));
    let o = regnum(&[
        "check-tuple",
        "M11",
        "M10",
        "M10",
        "L2(11)",
        "L2(11)",
        "--expect",
        "regular",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn soluble_four_tuple_in_s8() {
    let o = regnum(&[
        "check-tuple",
        "S8",
        "S4wrS2",
        "S4wrS2",
        "S4wrS2",
        "S4wrS2",
        "--expect",
        "nonregular",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("NONREGULAR"));
}

#[test]
fn single_nontrivial_component_is_nonregular() {
    let o = regnum(&["check-tuple", "S5", "S4", "--format", "machine"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict=NONREGULAR"));
}

#[test]
fn exhausted_budget_is_unknown() {
    // no order bound; one random attempt and no room for orbit enumeration
    let o = regnum(&[
        "check-tuple",
        "S6",
        "PGL2(5)",
        "PGL2(5)",
        "PGL2(5)",
        "PGL2(5)",
        "--budget-random",
        "1",
        "--ceiling-exhaustive",
        "1",
        "--format",
        "machine",
    ]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict=UNKNOWN"));
}

#[test]
fn usage_and_data_errors_exit_3() {
    assert_eq!(code(&regnum(&["certify", "--from", "59", "--to", "59"])), 3);
    assert_eq!(code(&regnum(&["check-tuple", "M24", "M23"])), 3);
    assert_eq!(code(&regnum(&["check-tuple", "M11", "NotAGroup"])), 3);
    assert_eq!(code(&regnum(&["check-tuple", "A6.2", "L2(5)"])), 3);
    assert_eq!(
        code(&regnum(&[
            "--workers",
            "0",
            "certify",
            "--from",
            "60",
            "--to",
            "60"
        ])),
        3
    );
    assert_eq!(code(&regnum(&["no-such-command"])), 3);
    assert_eq!(code(&regnum(&["table", "nosuchtable"])), 3);
}

#[test]
fn unsupported_rows_are_listed() {
    let o = regnum(&["table", "prim", "--groups", "S30", "--format", "machine"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("group=S30 status=unsupported"));
}

#[test]
fn certify_reports_ell_prime() {
    let o = regnum(&[
        "certify", "--from", "60", "--to", "60", "--format", "machine",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(
        s.contains("ell_prime=23") && s.contains("certified=true"),
        "{s}"
    );
    // exact rationals in machine form
    assert!(s.contains("alpha=") && s.contains('/'));
}

#[test]
fn machine_output_is_deterministic() {
    let args = [
        "table", "prim", "--groups", "A5,S5,A6", "--format", "machine", "--seed", "11",
    ];
    let a = regnum(&args);
    let b = regnum(&args);
    let mut par = args.to_vec();
    par.extend(["--workers", "3"]);
    let c = regnum(&par);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 3);
}

#[test]
fn ledger_round_trip_and_replay() {
    let path = scratch("ledger");
    let p = path.to_str().unwrap();
    for comps in [
        &["L2(11)", "L2(11)", "L2(11)"][..],
        &["M10", "M10"],
        &["M10", "M9:2", "S5"],
    ] {
        let mut args = vec!["check-tuple", "M11"];
        args.extend(comps);
        args.extend(["--ledger", p]);
        assert_eq!(code(&regnum(&args)), 0);
    }
    let o = regnum(&["ledger", "replay", "--ledger", p]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let s = stdout(&o);
    let count = |k: &str| -> usize {
        s.split_whitespace()
            .find_map(|w| w.strip_prefix(k))
            .and_then(|v| v.parse().ok())
            .unwrap()
    };
    assert!(count("regular=") >= 1);
    assert_eq!(count("regular="), count("verified="));
    assert_eq!(count("failed="), 0);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn catalog_commands() {
    let o = regnum(&["catalog", "verify", "M11", "S6", "SL3(3)"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = regnum(&["catalog", "list", "S6", "--format", "machine"]);
    assert!(stdout(&o).contains("name=PGL2(5)"));
}

#[test]
fn witness_and_qhat_commands() {
    let o = regnum(&[
        "witness", "S8", "S2wrS4", "S2wrS4", "S4wrS2", "S4wrS2", "S2wrS4", "S4wrS2", "S2wrS4",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("VERIFIED true"));
    let o = regnum(&["qhat", "M11", "L2(11)", "L2(11)", "L2(11)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().last().unwrap().starts_with("QHAT="));
}
