//! End-to-end acceptance tests for the binary: ingestion error paths,
//! determinism, exit codes, and the golden-report comparison. These drive
//! the compiled executable exactly as a user would.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn betatrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betatrace"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_temp_csv(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal termination")
}

#[test]
fn criterion_9_simulate_is_byte_identical_across_runs() {
    let args = [
        "simulate",
        "--n",
        "30",
        "--k",
        "3",
        "--replicates",
        "500",
        "--seed",
        "91",
        "--effect-strength",
        "0.2",
    ];
    let first = betatrace(&args);
    let second = betatrace(&args);
    assert_eq!(exit_code(&first), 0, "stderr: {}", stderr_of(&first));
    assert_eq!(first.stdout, second.stdout, "simulate output not byte-identical");

    // the same holds when writing to files
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.txt");
    let out_b = dir.path().join("b.txt");
    let mut with_out_a: Vec<&str> = args.to_vec();
    let a_str = out_a.to_str().unwrap();
    with_out_a.extend_from_slice(&["--out", a_str]);
    let mut with_out_b: Vec<&str> = args.to_vec();
    let b_str = out_b.to_str().unwrap();
    with_out_b.extend_from_slice(&["--out", b_str]);
    assert_eq!(exit_code(&betatrace(&with_out_a)), 0);
    assert_eq!(exit_code(&betatrace(&with_out_b)), 0);
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
    println!("criterion 9 (simulate determinism): PASS");
}

#[test]
fn simulate_null_ks_distance_is_below_critical_value() {
    let output = betatrace(&[
        "simulate",
        "--n",
        "50",
        "--k",
        "3",
        "--replicates",
        "10000",
        "--seed",
        "1",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let text = stdout_of(&output);
    let ks_line = text
        .lines()
        .find(|l| l.trim_start().starts_with("ks_distance:"))
        .expect("ks_distance line present");
    let ks: f64 = ks_line.split(':').nth(1).unwrap().trim().parse().unwrap();
    assert!(ks < 0.0163, "KS distance {ks} at or above the 1% critical value");
}

#[test]
fn simulate_single_replicate_produces_degenerate_statistics() {
    let output = betatrace(&[
        "simulate", "--n", "20", "--k", "2", "--replicates", "1", "--seed", "5",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(text.contains("empirical_var: 0.0000000000000000e0"));
    assert!(text.contains("replicates: 1"));
}

#[test]
fn criterion_9_verify_exits_zero_on_every_shipped_dataset() {
    let data_dir = workspace_root().join("data");
    let mut checked = 0;
    for entry in std::fs::read_dir(&data_dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().map(|e| e == "csv").unwrap_or(false) {
            let output = betatrace(&["verify", "--input", path.to_str().unwrap(), "--x", "dose"]);
            assert_eq!(
                exit_code(&output),
                0,
                "verify failed on {}: {}",
                path.display(),
                stderr_of(&output)
            );
            assert!(stdout_of(&output).contains("verdict: PASS"));
            checked += 1;
        }
    }
    assert!(checked >= 2, "expected at least two shipped datasets");
    println!("criterion 9 (verify on {checked} shipped datasets): PASS");
}

#[test]
fn criterion_8_too_few_rows_at_ingestion() {
    // n = 3 rows, k = 2 responses: n = k + 1
    let f = write_temp_csv("dose,a,b\n1,2,3\n2,3,4\n3,4,5\n");
    let output = betatrace(&["fit", "--input", f.path().to_str().unwrap(), "--x", "dose"]);
    assert_eq!(exit_code(&output), 1);
    assert!(
        stderr_of(&output).contains("too few rows"),
        "stderr: {}",
        stderr_of(&output)
    );
    println!("criterion 8 (ingestion rejects n = k + 1): PASS");
}

/// Walks two JSON values in lockstep; numbers must agree to `tol`,
/// everything else must match exactly.
fn assert_json_close(a: &serde_json::Value, b: &serde_json::Value, tol: f64, path: &str) {
    use serde_json::Value::*;
    match (a, b) {
        (Number(x), Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!(
                (x - y).abs() <= tol,
                "field {path}: {x} vs {y} differ by more than {tol}"
            );
        }
        (Object(x), Object(y)) => {
            assert_eq!(
                x.keys().collect::<Vec<_>>(),
                y.keys().collect::<Vec<_>>(),
                "field {path}: key sets differ"
            );
            for (k, v) in x {
                assert_json_close(v, &y[k], tol, &format!("{path}.{k}"));
            }
        }
        (Array(x), Array(y)) => {
            assert_eq!(x.len(), y.len(), "field {path}: array lengths differ");
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                assert_json_close(u, v, tol, &format!("{path}[{i}]"));
            }
        }
        _ => assert_eq!(a, b, "field {path} differs"),
    }
}

#[test]
fn fit_report_matches_committed_golden() {
    let output = betatrace(&[
        "fit",
        "--input",
        "data/synthetic_n50_k3.csv",
        "--x",
        "dose",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let got: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let golden_text =
        std::fs::read_to_string(workspace_root().join("data/synthetic_n50_k3.report.json"))
            .unwrap();
    let golden: serde_json::Value = serde_json::from_str(&golden_text).unwrap();
    assert_json_close(&got, &golden, 1e-10, "$");
    println!("golden report comparison at 1e-10: PASS");
}

#[test]
fn fit_k1_dataset_reports_squared_correlation() {
    // direct correlation oracle on the shipped univariate dataset
    let text = std::fs::read_to_string(workspace_root().join("data/univariate_k1.csv")).unwrap();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for line in text.lines().skip(1) {
        let mut parts = line.split(',');
        xs.push(parts.next().unwrap().parse::<f64>().unwrap());
        ys.push(parts.next().unwrap().parse::<f64>().unwrap());
    }
    let n = xs.len() as f64;
    let (xm, ym) = (
        xs.iter().sum::<f64>() / n,
        ys.iter().sum::<f64>() / n,
    );
    let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| (a - xm) * (b - ym)).sum();
    let sxx: f64 = xs.iter().map(|a| (a - xm) * (a - xm)).sum();
    let syy: f64 = ys.iter().map(|b| (b - ym) * (b - ym)).sum();
    let r2 = sxy * sxy / (sxx * syy);

    let output = betatrace(&[
        "fit",
        "--input",
        "data/univariate_k1.csv",
        "--x",
        "dose",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let effect = doc["inference"]["effect"].as_f64().unwrap();
    assert!(
        (effect - r2).abs() <= 1e-12,
        "k = 1 effect {effect} vs squared correlation {r2}"
    );
}

#[test]
fn perfect_fit_reports_warning_and_zero_p() {
    // x is literally one of the response columns
    let f = write_temp_csv(
        "dose,a,b\n1,1,0.5\n2,2,0.1\n3,3,0.9\n4,4,0.4\n5,5,0.2\n6,6,0.8\n",
    );
    let output = betatrace(&[
        "fit",
        "--input",
        f.path().to_str().unwrap(),
        "--x",
        "dose",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_of(&output));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(doc["inference"]["effect"].as_f64().unwrap(), 1.0);
    assert_eq!(doc["inference"]["p_exact"].as_f64().unwrap(), 0.0);
    assert!(doc["inference"]["f_stat"].is_null());
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(
        warnings.iter().any(|w| w.as_str().unwrap().contains("perfect fit")),
        "warnings: {warnings:?}"
    );
}

#[test]
fn x_in_y_selection_fails_before_reading_data() {
    // the input path does not exist, yet the overlap is reported (exit 1),
    // proving the check precedes any file access
    let output = betatrace(&[
        "fit",
        "--input",
        "/nonexistent/never.csv",
        "--x",
        "dose",
        "--y",
        "a,dose",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr_of(&output).contains("also appears in the y selection"));
}

#[test]
fn collinear_columns_exit_with_numerical_failure() {
    let f = write_temp_csv(
        "dose,a,b\n1,2,4\n2,1,2\n3,5,10\n4,3,6\n5,2,4\n6,4,8\n",
    );
    let output = betatrace(&["verify", "--input", f.path().to_str().unwrap(), "--x", "dose"]);
    assert_eq!(exit_code(&output), 2);
    assert!(
        stderr_of(&output).contains("collinear"),
        "stderr: {}",
        stderr_of(&output)
    );
}

#[test]
fn verify_with_zero_tolerance_fails_on_nontrivial_data() {
    let output = betatrace(&[
        "verify",
        "--input",
        "data/synthetic_n50_k3.csv",
        "--x",
        "dose",
        "--tol",
        "0",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stdout_of(&output).contains("verdict: FAIL"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(exit_code(&betatrace(&["fit", "--nope"])), 3);
    assert_eq!(exit_code(&betatrace(&["fit"])), 3); // missing required flags
    assert_eq!(
        exit_code(&betatrace(&[
            "simulate", "--n", "4", "--k", "3", "--replicates", "5", "--seed", "1"
        ])),
        3
    ); // n < k + 2
    assert_eq!(exit_code(&betatrace(&["frobnicate"])), 3);
}

#[test]
fn help_and_version_exit_zero() {
    let help = betatrace(&["--help"]);
    assert_eq!(exit_code(&help), 0);
    assert!(stdout_of(&help).contains("fit"));
    assert_eq!(exit_code(&betatrace(&["--version"])), 0);
}

#[test]
fn fit_writes_only_the_requested_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let output = betatrace(&[
        "fit",
        "--input",
        "data/univariate_k1.csv",
        "--x",
        "dose",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout_of(&output).is_empty());
    assert!(out.exists());
    let listing: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(listing.len(), 1, "exactly the requested file is created");
}
