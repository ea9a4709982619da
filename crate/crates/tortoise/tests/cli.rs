//! End-to-end checks of the command-line interface: output contents,
//! formats, determinism, and the exit-code contract (0 pass, 1 verification
//! failure, 2 usage/parse error, 3 resource cap).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tortoise"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

/// Count column of a CSV table.
fn csv_counts(csv: &str) -> Vec<usize> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn word_commands() {
    assert_eq!(stdout(&["word", "tortoise", "11011000"]), "10110001\n");
    assert_eq!(
        stdout(&["word", "hare", "314159265358979323846264"]),
        "131452355687233424668999\n"
    );
    assert_eq!(stdout(&["word", "index", "0011"]), "0\n");
    assert_eq!(stdout(&["word", "sort", "201"]), "012\n");
    assert_eq!(
        stdout(&["word", "iterate", "001100011011100", "--k", "1"]),
        "001000110111001\n"
    );
}

#[test]
fn word_usage_errors_exit_2() {
    assert_eq!(exit_code(&["word", "iterate", "0101"]), 2);
    assert_eq!(exit_code(&["word", "hare", "01x1"]), 2);
    assert_eq!(exit_code(&["word", "frobnicate", "0101"]), 2);
    assert_eq!(exit_code(&["table", "rho", "--seq", "q", "--n", "1..3"]), 2);
    assert_eq!(exit_code(&["table", "rho", "--n", "1..3"]), 2);
    assert_eq!(exit_code(&["table", "rho", "--seq", "f", "--n", "5..3"]), 2);
    assert_eq!(
        exit_code(&["verify", "lemma1", "--n", "1..5"]),
        2,
        "lemma1 needs a sequence"
    );
}

#[test]
fn table_commands() {
    let csv = stdout(&[
        "table", "tortoise", "--seq", "f", "--k", "1", "--n", "1..15", "--format", "csv",
    ]);
    assert_eq!(
        csv_counts(&csv),
        vec![2, 3, 5, 7, 12, 18, 26, 32, 36, 40, 44, 48, 52, 56, 60]
    );

    let csv = stdout(&["table", "ab", "--seq", "t", "--n", "1..8", "--format", "csv"]);
    assert_eq!(csv_counts(&csv), vec![2, 3, 2, 3, 2, 3, 2, 3]);

    let csv = stdout(&["table", "rho", "--seq", "f", "--n", "1..6", "--format", "csv"]);
    assert_eq!(csv_counts(&csv), vec![2, 4, 8, 12, 18, 23]);

    let csv = stdout(&["table", "nearly", "--seq", "t", "--n", "1..1", "--format", "csv"]);
    assert_eq!(csv_counts(&csv), vec![2]);
}

#[test]
fn csv_output_is_byte_stable() {
    let args = ["table", "rho", "--seq", "t", "--n", "1..12", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn table_text_and_json_formats() {
    let text = stdout(&["table", "rho", "--seq", "f", "--n", "1..3"]);
    assert!(text.contains("# rho complexity of f"));
    assert!(text.contains("prefix_len"));

    let json = stdout(&["table", "rho", "--seq", "f", "--n", "1..3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["sequence"], "f");
    assert_eq!(v["rows"][2]["count"], 8);
    assert!(v["rows"][2]["prefix_length"].is_u64());
}

#[test]
fn stat_commands() {
    let out = stdout(&["stat", "abel", "--seq", "f", "--k", "1..5", "--nmax", "40"]);
    assert_eq!(out.lines().next().unwrap(), "2,3,5,6,9");
    assert!(out.contains("n_max = 40"), "{out}");

    let out = stdout(&["stat", "threshold", "--k", "1..2", "--nmax", "64"]);
    assert_eq!(out.lines().next().unwrap(), "8,13");
    assert!(out.contains("n_max = 64"));

    let out = stdout(&["stat", "abel", "--seq", "t", "--k", "1", "--nmax", "20"]);
    assert_eq!(out.lines().next().unwrap(), "2");

    let csv = stdout(&[
        "stat", "abel", "--seq", "f", "--k", "1..3", "--nmax", "40", "--format", "csv",
    ]);
    assert_eq!(csv, "k,value,n_max\n1,2,40\n2,3,40\n3,5,40\n");

    // Threshold is a paperfolding statistic.
    assert_eq!(
        exit_code(&["stat", "threshold", "--seq", "t", "--k", "1", "--nmax", "64"]),
        2
    );
    // No threshold within reach of nmax.
    assert_eq!(exit_code(&["stat", "threshold", "--k", "4", "--nmax", "20"]), 2);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(exit_code(&["verify", "pf-rho", "--n", "8..12"]), 0);
    assert_eq!(exit_code(&["verify", "pf-inj", "--n", "2..2"]), 1);
    assert_eq!(exit_code(&["verify", "all", "--n", "11..14"]), 0);
    assert_eq!(
        exit_code(&["verify", "sandwich", "--seq", "t", "--n", "1..12"]),
        0
    );
}

#[test]
fn verify_resource_cap_exits_3() {
    // A DFAO-backed sequence has no closed-form shortcut, so a tiny prefix
    // cap with a demanding window cannot stabilize.
    assert_eq!(
        exit_code(&[
            "table", "rho", "--dfao", "data/tm.dfao", "--n", "20..20", "--prefix-max",
            "2048", "--window", "10",
        ]),
        3
    );
}

#[test]
fn verify_output_formats() {
    let text = stdout(&["verify", "tm-rho", "--n", "10..12"]);
    assert!(text.contains("tm-rho[t] n=10..12: PASS"));

    let json = stdout(&["verify", "tm-rho", "--n", "10..12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["suite"], "tm-rho");
    assert_eq!(v[0]["outcome"], "pass");

    let out = run(&["verify", "pf-inj", "--n", "2..2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.contains("01, 10"), "{text}");
}

#[test]
fn dfao_sequences_from_files() {
    let builtin = stdout(&["table", "rho", "--seq", "t", "--n", "1..5", "--format", "csv"]);
    let from_file = stdout(&[
        "table", "rho", "--dfao", "data/tm.dfao", "--n", "1..5", "--format", "csv",
    ]);
    assert_eq!(csv_counts(&builtin), csv_counts(&from_file));

    assert_eq!(
        exit_code(&["table", "rho", "--dfao", "data/missing.dfao", "--n", "1..3"]),
        2
    );

    // A malformed description is a parse error.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dfao");
    std::fs::write(&bad, "base 2 alphabet 2 initial 0\nstate 0 output 0\ntrans 0 0 0\n").unwrap();
    assert_eq!(
        exit_code(&["table", "rho", "--dfao", bad.to_str().unwrap(), "--n", "1..3"]),
        2
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&[
        "table", "rho", "--seq", "f", "--n", "1..4", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv_counts(&content), vec![2, 4, 8, 12]);
}
