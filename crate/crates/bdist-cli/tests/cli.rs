//! End-to-end command tests: golden outputs and the exit-code contract.

use std::process::{Command, Output};

fn bdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = bdist(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    bdist(args).status.code().expect("exit code")
}

#[test]
fn eval_examples() {
    assert_eq!(stdout_of(&["eval", "--dist", "DELTA(0)", "--phi", "CHI{(-1,1)}"]), "1\n");
    assert_eq!(stdout_of(&["eval", "--dist", "PARITY", "--phi", "CHI{(0,1)}"]), "1\n");
    assert_eq!(stdout_of(&["eval", "--dist", "REG{}", "--phi", "CHI{(0,1)}"]), "0\n");
    assert_eq!(
        stdout_of(&["eval", "--dist", "INTDL", "--phi", "CHI{(0,1)}"]),
        "1\n"
    );
    // lazy convolution result applied directly
    assert_eq!(
        stdout_of(&[
            "eval",
            "--dist",
            "REG PROGP(0,1) (*) REG PROGP(0,1)",
            "--phi",
            "CHI{2}"
        ]),
        "1\n"
    );
}

#[test]
fn eval_trace_goes_to_stderr() {
    // the scaled parity functional keeps its limit node, so the trace shows
    // the chosen stabilization shift
    let out = bdist(&[
        "eval",
        "--dist",
        "LIM-(CHI{(-1,1)} . PARITY)",
        "--phi",
        "CHI{(-1,0)}",
        "--trace",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("stabilized left shift eps ="), "trace missing: {err}");
}

#[test]
fn canon_merges_components() {
    assert_eq!(
        stdout_of(&["canon", "--fn", "CHI{(0,1)} + CHI{1} + CHI{(1,2)}"]),
        "CHI{(0, 2)}\n"
    );
    assert_eq!(stdout_of(&["canon", "--fn", "CHI{0} + CHI{0}"]), "0\n");
}

#[test]
fn regular_verdicts() {
    assert_eq!(
        stdout_of(&["regular", "--dist", "DELTAL{0}", "--window", "-1", "1"]),
        "SINGULAR at t=0 (F*)\n"
    );
    assert_eq!(
        stdout_of(&["regular", "--dist", "REG{0,1}", "--window", "-2", "2"]),
        "REGULAR on window [-2, 2]\n"
    );
}

#[test]
fn fund_table_golden() {
    let expected = "window: [-1, 2]\n\
                    family: -1, 0, 1, 2\n\
                    t\tF0\tF*\tF_*\n\
                    -1\t0\t0\t0\n\
                    0\t1\t0\t0\n\
                    1\t1\t0\t0\n\
                    2\t0\t0\t0\n\
                    pair\tF\n\
                    (-1, 0)\t0\n\
                    (0, 1)\t0\n\
                    (1, 2)\t0\n";
    assert_eq!(
        stdout_of(&["fund", "--dist", "REG{0,1}", "--window", "-1", "2"]),
        expected
    );
}

#[test]
fn conv_outputs() {
    assert_eq!(
        stdout_of(&["conv", "--f", "REG{0,1}", "--g", "REG{0,1}"]),
        "REG{0, 2}\n"
    );
    assert_eq!(
        stdout_of(&["conv", "--f", "DELTAL{0}", "--g", "DELTAL{0}"]),
        "DELTAL{0}\n"
    );
    assert_eq!(
        stdout_of(&["conv", "--f", "REG{0}", "--g", "PARITY"]),
        "PARITY\n"
    );
    assert_eq!(
        stdout_of(&["conv", "--f", "REG{0,1}", "--g", "REG{0,1}", "--phi", "CHI{2}"]),
        "1\n"
    );
    assert_eq!(
        stdout_of(&["conv", "--f", "REG PROGP(0,1)", "--g", "REG PROGP(0,1)"]),
        "window-lazy convolution; support on [-8, 8]: {0, 2, 4, 6, 8}\n"
    );
}

#[test]
fn tensor_applies() {
    assert_eq!(
        stdout_of(&[
            "tensor",
            "--f",
            "REG{0}",
            "--g",
            "REG{1}",
            "--phi2",
            "CHI2{(-1,1)x(0,2)}"
        ]),
        "1\n"
    );
}

#[test]
fn plot_ascii_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wave.txt");
    let out = path.to_str().unwrap();
    assert!(bdist(&[
        "plot", "--fn", "CHI{(0,1)} + CHI{2}", "--window", "-1", "3", "--format", "ascii",
        "--out", out
    ])
    .status
    .success());
    let content = std::fs::read_to_string(&path).unwrap();
    let expected = "1:   \u{25CB}\u{2500}\u{25CB} \u{25CF}  \n\
                    0: \u{2500}\u{2500}\u{25CF} \u{25CF}\u{2500}\u{25CB}\u{2500}\u{2500}\n\
                    \u{20}  \u{20} ^ ^ ^  \n\
                    t: 0, 1, 2\n";
    assert_eq!(content, expected);
}

#[test]
fn plot_svg_is_wellformed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wave.svg");
    let out = path.to_str().unwrap();
    assert!(bdist(&[
        "plot", "--fn", "CHI{(0,1)}", "--window", "-1", "2", "--format", "svg", "--out", out
    ])
    .status
    .success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("<svg"));
    assert!(content.trim_end().ends_with("</svg>"));
    assert!(content.contains("circle"));
}

#[test]
fn expressions_load_from_bd_files() {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/half_open.bd");
    assert_eq!(
        stdout_of(&["canon", "--fn", golden]),
        "CHI{(0, 1)} + CHI{1}\n"
    );
    let dist = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/delta_train.bd");
    assert_eq!(
        stdout_of(&["eval", "--dist", dist, "--phi", "CHI{(0,1)}"]),
        "1\n"
    );
}

#[test]
fn exit_codes() {
    // syntax errors
    assert_eq!(exit_code(&["eval", "--dist", "REG{0} &", "--phi", "CHI{0}"]), 2);
    assert_eq!(exit_code(&["eval", "--dist", "REG PROG(0,0)", "--phi", "CHI{0}"]), 2);
    assert_eq!(exit_code(&["canon", "--fn", "CHI{(1,0)}"]), 2);
    // domain errors
    assert_eq!(exit_code(&["eval", "--dist", "REG{0}", "--phi", "1"]), 3);
    assert_eq!(exit_code(&["conv", "--f", "PARITY", "--g", "DELTAL{0}"]), 3);
    assert_eq!(
        exit_code(&["conv", "--f", "REG PROG(0,1)", "--g", "REG PROG(0,1)"]),
        3
    );
    // missing vanishing family is only fatal under --strict
    assert_eq!(
        exit_code(&["fund", "--dist", "PARITY", "--window", "-1", "1", "--strict"]),
        4
    );
    assert_eq!(exit_code(&["fund", "--dist", "PARITY", "--window", "-1", "1"]), 0);
    // unknown suite is a usage problem
    assert_eq!(exit_code(&["check", "--suite", "nope"]), 2);
}

#[test]
fn algebra_reports_closure() {
    let out = stdout_of(&[
        "algebra",
        "--gen",
        "REG{0}; DELTAL{0}; DELTAR{0}",
        "--depth",
        "2",
        "--cases",
        "60",
        "--seed",
        "5",
    ]);
    assert!(out.contains("closed=yes"), "{out}");
    assert!(out.contains("unity=yes"), "{out}");
    assert!(out.contains("nonassociative-triples=0"), "{out}");
    // mixed lateral products are order-sensitive, and the report says so
    let noncomm: usize = out
        .lines()
        .find_map(|l| l.split("noncommutative-pairs=").nth(1))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(noncomm > 0);
}

#[test]
fn check_runs_a_suite() {
    let out = stdout_of(&["check", "--suite", "regular-membership", "--seed", "3", "--cases", "40"]);
    assert_eq!(
        out,
        "SUITE regular-membership cases=40 failures=0 status=pass\n"
    );
}

#[test]
fn seed_env_variable_is_honored() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_bdist"))
        .args(["check", "--suite", "linearity", "--cases", "30"])
        .env("BDIST_SEED", "99")
        .output()
        .unwrap();
    let with_flag = bdist(&["check", "--suite", "linearity", "--seed", "99", "--cases", "30"]);
    assert_eq!(with_env.stdout, with_flag.stdout);
}
