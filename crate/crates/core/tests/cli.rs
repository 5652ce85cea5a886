use std::path::Path;
use std::process::{Command, Output};

use rydberg_cz::bell::{parity_grid, simulate_ramsey, RamseyModel};
use rydberg_cz::config::DEFAULT_CONFIG;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rydberg-cz"));
    c.env_remove("RYDBERG_CZ_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find(|l| l.starts_with(key))
        .and_then(|l| l.split_whitespace().last())
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

fn budget_value(report: &str, row: &str) -> f64 {
    report
        .lines()
        .find(|l| l.split_whitespace().next() == Some(row))
        .and_then(|l| l.split_whitespace().nth(1))
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("no {row} in\n{report}"))
}

fn config_with(dir: &Path, find: &str, replace: &str) -> String {
    assert!(DEFAULT_CONFIG.contains(find), "{find}");
    let p = dir.join("test.cfg");
    std::fs::write(&p, DEFAULT_CONFIG.replacen(find, replace, 1)).unwrap();
    p.display().to_string()
}

#[test]
fn budget_prints_every_row() {
    let o = run(&["budget"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    for name in ["doppler_dephasing", "scattering_7p", "state_measurement", "magnetic_dephasing"] {
        assert!(s.contains(name), "{name}");
    }
    assert!((budget_value(&s, "doppler_dephasing") - 0.013).abs() < 0.001);
}

#[test]
fn budget_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("budget.csv");
    let o = run(&["budget", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("row,epsilon_1,provenance"));
    assert_eq!(csv.lines().count(), 17);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["entries"].as_array().unwrap().len(), 16);
}

#[test]
fn zero_ground_rydberg_time_zeroes_doppler_and_control_lifetime() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_with(dir.path(), "t_ground_rydberg = 0.98 us", "t_ground_rydberg = 0 us");
    let o = run(&["--config", &cfg, "budget"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert_eq!(budget_value(&s, "doppler_dephasing"), 0.0);
    assert_eq!(budget_value(&s, "rydberg_lifetime_control"), 0.0);
}

#[test]
fn malformed_unit_exits_2_with_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_with(dir.path(), "lambda1 = 459 nm", "lambda1 = 459 nmm");
    let o = run(&["--config", &cfg, "budget"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("beams.lambda1"), "{}", stderr(&o));
}

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_with(dir.path(), "temperature = 15 uK", "temperature = 30 uK");
    let o = bin().env("RYDBERG_CZ_CONFIG", &cfg).arg("budget").output().unwrap();
    assert!(o.status.success());
    assert!(budget_value(&stdout(&o), "doppler_dephasing") > 0.02);
}

#[test]
fn bell_cz_only() {
    let o = run(&["bell", "--mode", "cz_only"]);
    assert!(o.status.success());
    assert!((value(&stdout(&o), "F_direct") - 0.887).abs() < 0.015);
}

#[test]
fn bell_noiseless_config_gives_unit_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = DEFAULT_CONFIG.replacen("calculated_sources = true", "calculated_sources = false", 1);
    let start = text.find("[measured_errors]").unwrap();
    let end = text.find("[pipeline_options]").unwrap();
    let zeroed: String = text[start..end]
        .lines()
        .map(|l| match l.split_once('=') {
            Some((k, _)) if !l.trim_start().starts_with('#') => format!("{k}= 0"),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    text.replace_range(start..end, &format!("{zeroed}\n\n"));
    let p = dir.path().join("zero.cfg");
    std::fs::write(&p, text).unwrap();
    let o = run(&["--config", p.to_str().unwrap(), "bell", "--mode", "full"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!((value(&stdout(&o), "F_direct") - 1.0).abs() < 1e-9);
}

#[test]
fn bell_parity_csv_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("parity.csv");
    let o = run(&["bell", "--mode", "full", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let c_report = value(&stdout(&o), "C ");
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 65);
    assert!(lines[0].starts_with("phi_rad,parity_1"));
    let last_phi: f64 = lines[64].split(',').next().unwrap().parse().unwrap();
    assert!(last_phi < std::f64::consts::TAU);
    let fit = run(&["fit", "--input", out.to_str().unwrap(), "--model", "parity"]);
    assert!(fit.status.success(), "{}", stderr(&fit));
    assert!((value(&stdout(&fit), "C ") - c_report).abs() < 1e-6);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    let c_json = json["coherence"].as_f64().unwrap();
    let c_fit = value(&stdout(&fit), "C ");
    assert!((c_json - c_fit).abs() < 1e-9);
}

#[test]
fn fit_ramsey_recovers_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let theta = parity_grid(24);
    let model = RamseyModel {
        microwave: 0.0028,
        readout_loss: 0.0025,
        optical_pumping: 0.005,
        state_measurement: 1.5e-4,
        ..RamseyModel::default()
    };
    let curve = simulate_ramsey(&model, &theta).unwrap();
    let mut text = String::from("theta_rad,p1_1\n");
    for (t, p) in theta.iter().zip(&curve.p1) {
        text.push_str(&format!("{t},{p}\n"));
    }
    let p = dir.path().join("ramsey.csv");
    std::fs::write(&p, text).unwrap();
    let o = run(&["fit", "--input", p.to_str().unwrap(), "--model", "ramsey"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!((value(&stdout(&o), "epsilon") - 0.0028).abs() < 1e-5);
}

#[test]
fn fit_non_numeric_cell() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    std::fs::write(&p, "x,y\n0,1\n1,abc\n").unwrap();
    let o = run(&["fit", "--input", p.to_str().unwrap(), "--model", "parity"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("row 3") && e.contains("column 2"), "{e}");
}

#[test]
fn pulse_scan() {
    let o = run(&["pulse", "--sigma-scan", "0.05:0.30:26", "--pulse", "2pi"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    let rows: Vec<Vec<f64>> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 26);
    assert!(rows.windows(2).all(|w| w[1][2] > w[0][2]));
    let at = rows.iter().find(|r| (r[0] - 0.16).abs() < 1e-9).unwrap();
    assert!((at[2] - 0.006).abs() < 0.3 * 0.006 + 0.0005, "{}", at[2]);
    let single = run(&["pulse", "--sigma-scan", "0.16:0.16:1", "--pulse", "pi"]);
    let s = stdout(&single);
    assert_eq!(s.lines().count(), 2);
    let err: f64 = s.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((err - 0.0025).abs() < 0.00075);
}

#[test]
fn coherence_requires_trap_frequencies() {
    let o = run(&["coherence"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trap."));
}

#[test]
fn coherence_curves() {
    let dir = tempfile::tempdir().unwrap();
    let text = DEFAULT_CONFIG
        .replace("# frequency_", "frequency_")
        .replace("# drive_rabi_frequency", "drive_rabi_frequency");
    let cfg = dir.path().join("coh.cfg");
    std::fs::write(&cfg, text).unwrap();
    let out = dir.path().join("coh.csv");
    let o = run(&["--config", cfg.to_str().unwrap(), "coherence", "--t2-compare", "--temperatures", "15:30:2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!((value(&s, "T2 Rabi ratio at 2 Omega:") - 2.0).abs() < 1e-12);
    assert!((value(&s, "T2 Rabi ratio at 2 T:") - 0.25).abs() < 1e-12);
    let csv = std::fs::read_to_string(&out).unwrap();
    let row: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 15.0);
    assert!((row[1] - 1.6e-3).abs() < 1e-15);
    assert!(row[2] > row[1]);
    assert!((row[6] / row[5] - 1.0).abs() < 0.1);
}

#[test]
fn sweep_temperature_is_monotone_and_deterministic() {
    let args = ["sweep", "--param", "atom.temperature", "--range", "5:30:6", "--observable", "F_direct", "--mode", "cz_only"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    assert!(s.starts_with("atom.temperature_uK,F_direct_1"));
    let f: Vec<f64> = s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(f.len(), 6);
    assert!(f.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn sweep_fill_fraction() {
    let o = run(&["sweep", "--param", "atom.fill_fraction", "--range", "0.55:1:2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let f: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!((f[1] - f[0] + 0.004).abs() < 0.002);
    let single = run(&["sweep", "--param", "atom.fill_fraction", "--range", "0.7:1:1", "--observable", "crosstalk"]);
    assert_eq!(stdout(&single).lines().count(), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bell", "--mode", "fast"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--param", "atom.nothing", "--range", "1:2:2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
