//! End-to-end tests of the command-line interface, driving the built
//! binary the way a user would.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grandlab"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn golden_decode_matches_worked_example() {
    let out = bin()
        .args(["decode", "--matrix"])
        .arg(fixtures().join("example1_h.txt"))
        .arg("--llr-file")
        .arg(fixtures().join("example1.llr"))
        .args(["--decoder", "elim_reduced", "--budget", "50"])
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["guesses"], 2);
    assert_eq!(v["ep_index"], 7);
    assert_eq!(v["m"], 3);
    assert_eq!(v["n"], 3);
    assert_eq!(v["t_star"], 9);
    assert_eq!(v["codeword"], "0000000");
    let skipped: Vec<u64> = v["skipped_by_filter"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(skipped, vec![1, 2, 3, 4, 6]);
    let verified: Vec<u64> = v["verified"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(verified, vec![5, 7]);

    // the plain scan needs seven tests for the same output
    let out = bin()
        .args(["decode", "--matrix"])
        .arg(fixtures().join("example1_h.txt"))
        .arg("--llr-file")
        .arg(fixtures().join("example1.llr"))
        .args(["--decoder", "orbgrand", "--budget", "50"])
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["guesses"], 7);
    assert_eq!(v["ep_index"], 7);
    assert_eq!(v["codeword"], "0000000");
    assert!(v["m"].is_null());
    assert!(v["t_star"].is_null());
}

#[test]
fn decode_all_positive_llrs_is_zero_guess_success() {
    let out = bin()
        .args(["decode", "--code", "hamming74"])
        .args(["--llrs", "4.0,3.0,5.0,2.0,6.0,1.0,7.0"])
        .args(["--decoder", "elim_reduced", "--budget", "20"])
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["guesses"], 0);
    assert_eq!(v["codeword"], "0000000");
    assert!(v["ep_index"].is_null());
}

#[test]
fn decode_length_mismatch_is_data_error() {
    let out = bin()
        .args(["decode", "--code", "hamming74", "--llrs", "1.0,2.0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_decoder_is_usage_error() {
    let out = bin()
        .args(["decode", "--code", "hamming74", "--llrs", "1", "--decoder", "sgrand"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_matrix_file_is_data_error() {
    let out = bin()
        .args(["decode", "--matrix", "/nonexistent/h.txt", "--llrs", "1.0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_code_writes_matrix_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["gen-code", "--m", "7", "--n", "127", "--t", "2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let matrix = std::fs::read_to_string(dir.path().join("bch_127_113.txt")).unwrap();
    assert!(matrix.starts_with("14 127\n"));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bch_127_113.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["n"], 127);
    assert_eq!(sidecar["k"], 113);
    assert_eq!(sidecar["primitive_poly"], "0x89");

    // the small construction yields the (7,4) code
    let out = bin()
        .args(["gen-code", "--m", "3", "--n", "7", "--t", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let matrix = std::fs::read_to_string(dir.path().join("bch_7_4.txt")).unwrap();
    assert!(matrix.starts_with("3 7\n"));

    // no parity left: rejected
    let out = bin()
        .args(["gen-code", "--m", "7", "--n", "127", "--t", "0", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_writes_reports_and_reproduces_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out = bin()
        .args(["simulate", "--code", "hamming74"])
        .args(["--ebn0", "2,3", "--budget", "127", "--trials", "2000"])
        .args(["--seed", "11", "--threads", "2", "--out"])
        .arg(&out_a)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "bler.csv",
        "guesses.csv",
        "complexity.csv",
        "manifest.json",
        "guess_hist_2.csv",
        "guess_hist_3.csv",
        "rmre_hist_2.csv",
        "m_hist_3.csv",
    ] {
        assert!(out_a.join(f).exists(), "missing {f}");
    }
    let bler = std::fs::read_to_string(out_a.join("bler.csv")).unwrap();
    assert!(bler.starts_with("decoder,ebn0_db,trials,block_errors,abandonments,bler\n"));
    assert!(bler.contains("orbgrand,2,2000,"));

    // identical outputs from the recorded manifest, different thread count
    let out_b = dir.path().join("b");
    let out = bin()
        .args(["simulate", "--from-manifest"])
        .arg(out_a.join("manifest.json"))
        .args(["--threads", "1", "--out"])
        .arg(&out_b)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in ["bler.csv", "guesses.csv", "complexity.csv", "guess_hist_2.csv"] {
        let a = std::fs::read(out_a.join(f)).unwrap();
        let b = std::fs::read(out_b.join(f)).unwrap();
        assert_eq!(a, b, "{f} differs between runs");
    }
}

#[test]
fn simulate_rejects_empty_config() {
    let out = bin()
        .args(["simulate", "--ebn0", "3", "--trials", "10", "--out", "/tmp/x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn imported_pattern_order_drives_both_decoders() {
    let dir = tempfile::tempdir().unwrap();
    let order = dir.path().join("order.txt");
    // a deliberately shuffled order: the worked-example winner first
    std::fs::write(&order, "5\n1\n2,3\n1,2\n2\n3\n4\n").unwrap();
    for decoder in ["orbgrand", "elim_reduced"] {
        let out = bin()
            .args(["decode", "--matrix"])
            .arg(fixtures().join("example1_h.txt"))
            .arg("--llr-file")
            .arg(fixtures().join("example1.llr"))
            .args(["--decoder", decoder, "--budget", "7", "--ep-order"])
            .arg(&order)
            .output()
            .unwrap();
        let v = json_of(&out);
        // the pattern (5) is valid for this instance and now has priority 1
        assert_eq!(v["ep_index"], 1, "{decoder}");
        assert_eq!(v["codeword"], "0000000", "{decoder}");
    }

    // malformed order file: not strictly ascending
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3,2\n").unwrap();
    let out = bin()
        .args(["decode", "--matrix"])
        .arg(fixtures().join("example1_h.txt"))
        .arg("--llr-file")
        .arg(fixtures().join("example1.llr"))
        .args(["--ep-order"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn analyze_rmre_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["analyze-rmre", "--n", "1", "--rate", "0.5", "--ebn0", "5", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("rmre_5.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3); // header + P_0 + P_1

    // full-length table sums to one, with a paired empirical column
    let out = bin()
        .args(["analyze-rmre", "--code", "bch127_113", "--ebn0", "5"])
        .args(["--empirical", "--trials", "4000", "--seed", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("rmre_5.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("rank,p_analytic,p_empirical"));
    let mut sum_a = 0.0f64;
    let mut sum_e = 0.0f64;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        sum_a += cols[1].parse::<f64>().unwrap();
        sum_e += cols[2].parse::<f64>().unwrap();
    }
    assert!((sum_a - 1.0).abs() < 1e-6, "analytic sum {sum_a}");
    assert!((sum_e - 1.0).abs() < 1e-9, "empirical sum {sum_e}");
}

#[test]
fn fixture_generator_reproduces_checked_in_files() {
    let out = Command::new(env!("CARGO"))
        .args([
            "run",
            "-p",
            "grandlab-cli",
            "--example",
            "gen_example1_fixture",
        ])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let h = std::fs::read_to_string(fixtures().join("example1_h.txt")).unwrap();
    assert_eq!(h, "3 7\n1110000\n0111010\n1011101\n");
    let llr = std::fs::read_to_string(fixtures().join("example1.llr")).unwrap();
    assert_eq!(llr, "0.1\n0.2\n0.3\n0.4\n-0.5\n0.6\n0.7\n");
}
