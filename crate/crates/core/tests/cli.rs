use std::path::Path;
use std::process::{Command, Output};

const HEADER: &str = "h_m,s,omega2,sigma,delta,theta2,coherence_bits,mu";

fn gravcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gravcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(line: &str, name: &str) -> String {
    let idx = HEADER.split(',').position(|c| c == name).unwrap();
    line.split(',').nth(idx).unwrap().to_owned()
}

#[test]
fn single_point_at_surface() {
    let o = gravcoh(&[
        "--s",
        "1",
        "--height-km",
        "0",
        "--omega2",
        "1",
        "--sigma",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, [HEADER, lines[1]]);
    let delta: f64 = column(lines[1], "delta").parse().unwrap();
    assert!((delta - 1.734e-10).abs() < 1e-13);
    assert_eq!(column(lines[1], "mu"), "");
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn zero_squeezing_gives_zero_coherence() {
    let o = gravcoh(&["--s", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert_eq!(column(row, "coherence_bits").parse::<f64>().unwrap(), 0.0);
}

#[test]
fn negative_height_is_usage_error() {
    let o = gravcoh(&["--height-km", "-5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("height"));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        &["--s", "6"][..],
        &["--sweep", "h:0:100"],
        &["--sweep", "q:0:1:3"],
        &["--preset", "fig9"],
        &["--delta-mode", "approximate"],
        &["--digits", "0"],
        &["--bogus"],
    ] {
        let o = gravcoh(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn zero_baseline_mu_is_a_domain_error() {
    let o = gravcoh(&["--s", "0", "--mu", "--height-km", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("baseline"), "{err}");
}

#[test]
fn digits_control_precision() {
    let o = gravcoh(&["--digits", "4"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert_eq!(column(row, "s"), "1.000e0");
}

#[test]
fn trivial_sweep_without_gravity_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("flat.json");
    std::fs::write(
        &cfg,
        r#"{"mass_geom": 0.0, "kerr_a": 0.0, "omega_geom": 0.0}"#,
    )
    .unwrap();
    let o = gravcoh(&["--config", cfg.to_str().unwrap(), "--sweep", "h:0:1000:2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(
        column(rows[0], "coherence_bits"),
        column(rows[1], "coherence_bits")
    );
    assert_eq!(column(rows[1], "h_m"), "1.00000000000e6");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"omega2": 1.2, "s": 0.5}"#).unwrap();
    let o = gravcoh(&["--config", cfg.to_str().unwrap(), "--s", "0.7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert_eq!(column(row, "omega2").parse::<f64>().unwrap(), 1.2);
    assert_eq!(column(row, "s").parse::<f64>().unwrap(), 0.7);
}

#[test]
fn unknown_config_key_fails_loudly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("typo.json");
    std::fs::write(&cfg, "{\n  \"omgea2\": 1.2\n}\n").unwrap();
    let o = gravcoh(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("omgea2") && err.contains("line 2"), "{err}");
}

#[test]
fn missing_config_file() {
    let o = gravcoh(&["--config", "/nonexistent/run.json"]);
    assert_eq!(o.status.code(), Some(2));
}

fn run_preset(name: &str, out: &Path) -> String {
    let o = gravcoh(&["--preset", name, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn figure_two_table() {
    let dir = tempfile::tempdir().unwrap();
    let text = run_preset("fig2", &dir.path().join("fig2.csv"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 1 + 3 * 720);
    let sigmas: Vec<String> = lines[1..4].iter().map(|l| column(l, "sigma")).collect();
    assert_eq!(
        sigmas,
        ["8.00000000000e-1", "1.00000000000e0", "1.20000000000e0"]
    );
}

#[test]
fn figure_four_mu_within_one_percent() {
    let dir = tempfile::tempdir().unwrap();
    let text = run_preset("fig4", &dir.path().join("fig4.csv"));
    let mut n = 0;
    for line in text.lines().skip(1) {
        let mu: f64 = column(line, "mu").parse().unwrap();
        assert!(mu.abs() < 0.01);
        n += 1;
    }
    assert_eq!(n, 3 * 720);
}

#[test]
fn presets_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_preset("fig3", &dir.path().join("a.csv"));
    let b = run_preset("fig3", &dir.path().join("b.csv"));
    assert_eq!(a, b);
}

#[test]
fn exact_mode_and_conventions() {
    let o = gravcoh(&[
        "--delta-mode",
        "exact",
        "--nbar",
        "verbatim",
        "--theta1",
        "matched",
        "--height-km",
        "36000",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let delta: f64 = column(row, "delta").parse().unwrap();
    assert!((delta + 2.7015902080e-10).abs() < 1e-19);
}
