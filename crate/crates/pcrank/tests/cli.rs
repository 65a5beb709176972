//! End-to-end tests of the `pcrank` binary: exit codes, output formats, and
//! command determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

const EXAMPLE: &str = "1 1/2 2 5\n2 1 4 4\n1/2 1/4 1 5\n1/5 1/4 1/5 1\n";

fn pcrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("pcrank-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rank_both_prints_vectors_and_checks() {
    let m = write_temp("rank.mat", EXAMPLE);
    let out = pcrank(&["rank", "-m", m.to_str().unwrap(), "--method", "both"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("0.282434"), "evm weights missing:\n{text}");
    assert!(text.contains("0.294410"), "gmm weights missing:\n{text}");
    assert!(text.contains("checks: chain ok  md ok  cheb ok  mean ok"));
}

#[test]
fn rank_json_schema_is_stable() {
    let m = write_temp("rank-json.mat", EXAMPLE);
    let out = pcrank(&[
        "rank",
        "-m",
        m.to_str().unwrap(),
        "--method",
        "both",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["method"], "both");
    assert_eq!(v["evm"]["weights"].as_array().unwrap().len(), 4);
    assert_eq!(v["gmm"]["weights"].as_array().unwrap().len(), 4);
    for key in ["manhattan", "chebyshev", "kendall"] {
        assert!(v["distances"][key].is_number(), "missing distances.{key}");
    }
    for key in ["comp", "comp_lower", "comp_upper", "comp_max"] {
        assert!(v["compatibility"][key].is_number());
    }
    assert_eq!(v["bounds"]["chain_ok"], true);
    assert!((v["bounds"]["kappa"].as_f64().unwrap() - 0.2).abs() < 1e-9);

    // Full precision survives the JSON route.
    let w = v["evm"]["weights"][0].as_f64().unwrap();
    assert!((w - 0.282_434_355_777_8).abs() < 1e-10);
}

#[test]
fn rank_of_consistent_matrix_has_zero_distance() {
    let m = write_temp("consistent.mat", "2 4\n2\n");
    let out = pcrank(&["rank", "-m", m.to_str().unwrap(), "--method", "both"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("manhattan: 0.000000"), "{text}");
}

#[test]
fn rank_on_two_by_two_skips_envelope() {
    let m = write_temp("two.mat", "1 3\n1/3 1\n");
    let out = pcrank(&["rank", "-m", m.to_str().unwrap(), "--method", "both"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("envelope: undefined (order <= 2)"));
}

#[test]
fn malformed_file_exits_2_with_line_info() {
    let m = write_temp("bad.mat", "1 2\nx 1\n");
    let out = pcrank(&["rank", "-m", m.to_str().unwrap(), "--method", "evm"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "diagnostic should name the line: {err}");
}

#[test]
fn missing_file_exits_4() {
    let out = pcrank(&["rank", "-m", "/nonexistent/matrix.mat", "--method", "evm"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reciprocity_violation_exits_2_naming_entry() {
    let m = write_temp("recip.mat", "1 2\n0.4 1\n");
    let out = pcrank(&["check", "-m", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(2, 1)"), "should name the entry: {err}");
}

#[test]
fn check_reports_indices_and_worst_triad() {
    let m = write_temp("check.mat", EXAMPLE);
    let out = pcrank(&["check", "-m", m.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("CI: 0.084724"));
    assert!(text.contains("CR: 0.094138  acceptable (CR <= 0.1)"));
    assert!(text.contains("KI: 0.800000"));
    assert!(text.contains("worst triad: (a2, a3, a4)"));
}

#[test]
fn check_on_two_by_two_reports_ki_undefined() {
    let m = write_temp("check2.mat", "1 3\n1/3 1\n");
    let out = pcrank(&["check", "-m", m.to_str().unwrap()]);
    assert!(out.status.success(), "verdict is informational, exit 0");
    let text = stdout_of(&out);
    assert!(text.contains("CI: 0.000000"));
    assert!(text.contains("KI: undefined (order <= 2)"));
}

#[test]
fn check_accepts_custom_ri_table() {
    let m = write_temp("check-ri.mat", EXAMPLE);
    let ri = write_temp("table.ri", "4 = 0.5\n");
    let out = pcrank(&[
        "check",
        "-m",
        m.to_str().unwrap(),
        "--ri",
        ri.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // CI 0.084724 / 0.5 = 0.169448: over the acceptability line.
    assert!(stdout_of(&out).contains("CR: 0.169448  not acceptable"));
}

#[test]
fn compare_matrix_with_itself_gives_ones() {
    let m = write_temp("cmp-self.mat", EXAMPLE);
    let out = pcrank(&["compare", "-a", m.to_str().unwrap(), "-b", m.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("comp: 1.000000"));
    assert!(text.contains("comp_max: 1.000000"));
    assert!(text.contains("ordering chain: ok"));
}

#[test]
fn compare_two_by_two_reference_values() {
    let a = write_temp("cmp-a.mat", "1 2\n1/2 1\n");
    let b = write_temp("cmp-b.mat", "1 4\n1/4 1\n");
    let out = pcrank(&["compare", "-a", a.to_str().unwrap(), "-b", b.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("comp: 1.125000"));
    assert!(text.contains("comp_lower: 0.500000"));
    assert!(text.contains("comp_upper: 2.000000"));
    assert!(text.contains("comp_max: 2.000000"));
}

#[test]
fn compare_order_mismatch_exits_2() {
    let a = write_temp("cmp-n2.mat", "1 2\n1/2 1\n");
    let b = write_temp("cmp-n4.mat", EXAMPLE);
    let out = pcrank(&["compare", "-a", a.to_str().unwrap(), "-b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_valid() {
    let args = ["gen", "-n", "4", "-d", "3.0", "--seed", "11"];
    let first = pcrank(&args);
    let second = pcrank(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same args, same bytes");

    // The emitted text parses back into a valid matrix.
    let matrix = pcrank::PcMatrix::parse(&stdout_of(&first)).unwrap();
    assert_eq!(matrix.order(), 4);
}

#[test]
fn gen_level_one_is_consistent() {
    let m = write_temp(
        "gen-consistent.mat",
        &stdout_of(&pcrank(&["gen", "-n", "5", "-d", "1.0", "--seed", "3"])),
    );
    let out = pcrank(&["check", "-m", m.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("CI: 0.000000"));
    assert!(text.contains("KI: 0.000000"));
}

#[test]
fn gen_rejects_bad_level() {
    let out = pcrank(&["gen", "-n", "4", "-d", "0.5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_respects_config_file_and_flags() {
    let cfg = write_temp(
        "exp.cfg",
        "n = 4\nd_grid = 1.0,2.0\nsamples_per_d = 3\nmaster_seed = 5\n",
    );
    let out = pcrank(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = stdout_of(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "# pcrank-experiment v1; n=4; factor_mode=uniform; weight_mode=uniform01; clamp=0; master_seed=5"
    );
    assert_eq!(lines.len(), 2 + 6, "header + columns + 2 levels x 3 samples");
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("bound violations: 0"));

    // A flag overrides the config value.
    let out2 = pcrank(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "2",
    ]);
    assert_eq!(stdout_of(&out2).lines().count(), 2 + 4);
}

#[test]
fn experiment_writes_output_file() {
    let path = std::env::temp_dir().join(format!("pcrank-exp-{}.csv", std::process::id()));
    let out = pcrank(&[
        "experiment",
        "-n",
        "3",
        "--d-grid",
        "1.0:1.0:2.0",
        "--samples",
        "2",
        "--seed",
        "8",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "CSV goes to the file");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 2 + 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn estimate_ri_prints_band_value() {
    let out = pcrank(&["estimate-ri", "-n", "3", "--samples", "4000", "--seed", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let value: f64 = text
        .split('=')
        .nth(1)
        .unwrap()
        .trim()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((0.4..0.7).contains(&value), "RI(3) estimate {value}");
}

#[test]
fn estimate_ri_rejects_order_two() {
    let out = pcrank(&["estimate-ri", "-n", "2", "--samples", "10", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
