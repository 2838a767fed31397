//! Acceptance suite for the command-line front end: the verification
//! harness contract and the sweep/figure determinism and format contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CSV_HEADER: &str = "channel,theta,phi,T_C,T_H,r,Phi,Q,gamma0,omega,lambda,mu,v,qfi_theta_closed,qfi_theta_numeric,qfi_phi_closed,qfi_phi_numeric,status,note";

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qfi")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn qfi binary")
}

fn fresh_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qfi_acceptance_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn criterion_8_verification_harness() {
    let dir_a = fresh_dir("verify_a");
    let dir_b = fresh_dir("verify_b");
    let out_a = run_in(&dir_a, &["verify"]);
    let out_b = run_in(&dir_b, &["verify"]);

    // Deterministic: byte-identical stdout and byte-identical CSV.
    assert_eq!(out_a.stdout, out_b.stdout, "verify stdout must be reproducible");
    let csv_a = std::fs::read(dir_a.join("verify_report.csv")).unwrap();
    let csv_b = std::fs::read(dir_b.join("verify_report.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "verify CSV must be reproducible");

    let text = String::from_utf8(out_a.stdout).unwrap();

    // One gated line per closed-form expression, both grouping variants
    // of the squeezed-channel theta expression included.
    let expressions = [
        "theta_sgad[regrouped]",
        "theta_sgad[printed]",
        "theta_gad",
        "theta_ad",
        "phi_sgad",
        "phi_gad",
        "phi_ad",
    ];
    for expr in expressions {
        let count = text
            .lines()
            .filter(|l| {
                (l.starts_with("PASS") || l.starts_with("FAIL"))
                    && l.contains(expr)
                    && l.contains("validated-domain")
            })
            .count();
        assert_eq!(count, 1, "expected exactly one gated line for {expr}");
    }

    // The phi expressions must PASS.
    for expr in ["phi_sgad", "phi_gad", "phi_ad"] {
        let line = text
            .lines()
            .find(|l| l.contains(expr) && l.contains("validated-domain"))
            .unwrap();
        assert!(line.starts_with("PASS"), "{expr} must PASS, got: {line}");
    }

    // Every FAIL line carries the worst-case parameter tuple.
    let mut fails = 0;
    for line in text.lines().filter(|l| l.starts_with("FAIL")) {
        fails += 1;
        for field in ["theta=", "phi=", "w_over_t=", "lambda=", "mu=", "Q="] {
            assert!(line.contains(field), "FAIL line missing {field}: {line}");
        }
    }

    // Exit code 2 exactly when a FAIL is present.
    let code = out_a.status.code().unwrap();
    if fails > 0 {
        assert_eq!(code, 2);
    } else {
        assert_eq!(code, 0);
    }
    println!(
        "acceptance criterion 8: PASS — deterministic verify report, one gated line per expression (both groupings), φ expressions PASS, {fails} FAIL line(s) with worst tuples, exit code {code}"
    );
}

fn check_csv(path: &Path, expected_rows: usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER, "fixed header in {path:?}");
    let mut rows = 0;
    for line in lines {
        rows += 1;
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 19, "19 columns in every row of {path:?}");
        // Every declared column populated (the trailing note may be empty
        // only on ok rows).
        for f in &fields[..18] {
            assert!(!f.is_empty(), "empty field in {path:?}: {line}");
        }
    }
    assert_eq!(rows, expected_rows, "row count = grid size in {path:?}");
}

#[test]
fn criterion_9_sweep_determinism_and_figures() {
    let dir = fresh_dir("sweep");
    let sweep_args = [
        "sweep",
        "--channel",
        "ad",
        "--set",
        "theta=0.6",
        "--vary",
        "lambda=0:0.9:7",
        "--vary",
        "T_H=0.5:2:3",
    ];
    let mut args_a = sweep_args.to_vec();
    args_a.extend_from_slice(&["--out", "a.csv"]);
    let mut args_b = sweep_args.to_vec();
    args_b.extend_from_slice(&["--out", "b.csv"]);
    assert!(run_in(&dir, &args_a).status.success());
    assert!(run_in(&dir, &args_b).status.success());
    let a = std::fs::read(dir.join("a.csv")).unwrap();
    let b = std::fs::read(dir.join("b.csv")).unwrap();
    assert_eq!(a, b, "sweep CSV must be byte-identical across runs");
    check_csv(&dir.join("a.csv"), 21);

    for (which, rows) in [(3u8, 2500usize), (6, 505), (9, 505)] {
        let out = run_in(&dir, &["figure", &which.to_string()]);
        assert!(out.status.success(), "figure {which} failed: {out:?}");
        check_csv(&dir.join(format!("figure{which}.csv")), rows);
    }

    // The figure-9 reduction: at lambda=0 every Hawking-temperature row
    // carries the undamped theta-QFI of 4.
    let fig9 = std::fs::read_to_string(dir.join("figure9.csv")).unwrap();
    let lambda_zero_rows: Vec<&str> = fig9
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(10) == Some("0.00000000000e0"))
        .collect();
    assert_eq!(lambda_zero_rows.len(), 5);
    for row in lambda_zero_rows {
        let fields: Vec<&str> = row.split(',').collect();
        let numeric: f64 = fields[14].parse().unwrap();
        assert!((numeric - 4.0).abs() < 1e-8, "lambda=0 theta-QFI row: {row}");
    }
    println!(
        "acceptance criterion 9: PASS — sweep CSV byte-identical, fixed header, figures 3/6/9 complete with all columns populated"
    );
}

#[test]
fn remaining_figure_recipes_complete() {
    let dir = fresh_dir("figs_rest");
    for (which, rows) in [(4u8, 4375usize), (5, 2500), (7, 2500), (8, 505)] {
        let out = run_in(&dir, &["figure", &which.to_string()]);
        assert!(out.status.success(), "figure {which} failed: {out:?}");
        check_csv(&dir.join(format!("figure{which}.csv")), rows);
    }
}

#[test]
fn exit_codes_for_config_errors() {
    let dir = fresh_dir("exit");
    // Unknown parameter name.
    let out = run_in(&dir, &["eval", "--set", "bogus=1"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("bogus"), "error names the parameter: {msg}");

    // Out-of-range value carries the admissible range.
    let out = run_in(&dir, &["eval", "--channel", "ad", "--set", "lambda=1.5"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("lambda") && msg.contains("[0, 1]"), "range in: {msg}");

    // Channel/parameter mismatch.
    let out = run_in(&dir, &["eval", "--channel", "sgad", "--set", "lambda=0.5"]);
    assert_eq!(out.status.code(), Some(1));

    // Clean eval exits 0.
    let out = run_in(&dir, &["eval", "--channel", "ad"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn config_file_with_flag_override() {
    let dir = fresh_dir("cfgfile");
    std::fs::write(
        dir.join("run.cfg"),
        "channel = ad\ntheta = 0.6\nlambda = 0.2\n# comment\n",
    )
    .unwrap();
    let out = run_in(
        &dir,
        &["eval", "--config", "run.cfg", "--set", "lambda=0.4"],
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    // Flag overrides the file entry.
    let line = text.lines().last().unwrap();
    let fields: Vec<&str> = line.split(',').collect();
    assert_eq!(fields[10], "4.00000000000e-1");
    assert_eq!(fields[1], "6.00000000000e-1");
}
