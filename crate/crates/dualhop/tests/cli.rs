use std::path::Path;
use std::process::{Command, Output};

fn dualhop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualhop")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analytic_default_writes_a_41_row_fso_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dualhop(&["analytic", "--out", out, "--svg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&dir.path().join("analytic_fso_sch.csv"));
    assert_eq!(
        header,
        [
            "threshold_dB",
            "cp_analytic",
            "cp_raw",
            "clipped",
            "one_minus",
            "cp_asymptotic",
            "cp_asymptotic_raw",
            "asymptotic_clipped",
            "one_minus_asymptotic"
        ]
    );
    assert_eq!(rows.len(), 41);
    let cp = column(&header, &rows, "cp_analytic");
    assert!(cp[0] > cp[40]);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("analytic_fso_sch.json")).unwrap()).unwrap();
    assert_eq!(meta["quadrature"]["M_f"], 256);
    assert_eq!(meta["parameters"]["fso"]["alpha"], 4.0);
    assert!(meta["pole_perturbation"].is_null());
    let svg = std::fs::read_to_string(dir.path().join("analytic.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
}

#[test]
fn analytic_power_sweep_has_decreasing_outage_and_a_converging_asymptote() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sweep.json",
        r#"{"sweep": {"variable": "P_S_dBm", "start": 20, "stop": 90, "step": 2, "gamma_th_dB": 30}}"#,
    );
    let out = dir.path().join("out");
    let o = dualhop(&["analytic", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&out.join("analytic_fso_sch.csv"));
    assert_eq!(header[0], "P_S_dBm");
    let x = column(&header, &rows, "P_S_dBm");
    let outage = column(&header, &rows, "one_minus");
    let asym = column(&header, &rows, "one_minus_asymptotic");
    assert!(outage.windows(2).all(|w| w[1] <= w[0]));
    assert!(outage[0] == 1.0 && *outage.last().unwrap() < 1e-4);
    for i in 0..x.len() {
        if x[i] >= 80.0 {
            assert!((asym[i] / outage[i] - 1.0).abs() <= 0.05, "P_S {}", x[i]);
        }
    }
}

#[test]
fn simulate_is_reproducible_and_reports_wilson_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = dualhop(&["simulate", "--trials", "100000", "--seed", "17", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        std::fs::read(out.join("simulate_fso_sch.csv")).unwrap()
    };
    let a = run("a");
    assert_eq!(a, run("b"));
    let (header, rows) = read_csv(&dir.path().join("a/simulate_fso_sch.csv"));
    assert_eq!(header, ["threshold_dB", "cp_emp", "ci_lo", "ci_hi", "trials"]);
    let (p, lo, hi) =
        (column(&header, &rows, "cp_emp"), column(&header, &rows, "ci_lo"), column(&header, &rows, "ci_hi"));
    for i in 0..rows.len() {
        let normal = 2.0 * 1.96 * (p[i] * (1.0 - p[i]) / 1e5).sqrt();
        if p[i] > 0.01 && p[i] < 0.99 {
            assert!(((hi[i] - lo[i]) / normal - 1.0).abs() < 0.01, "row {i}");
        }
        assert_eq!(rows[i][4], "100000");
    }
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a/simulate_fso_sch.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 17);
    assert_eq!(meta["interference_geometry"], "approximate");
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(meta["parameters"]["trials"], 100000);
}

#[test]
fn simulate_e2e_sinr_outage_rises_with_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "e2e.json", r#"{"scenario": "e2e_sinr", "trials": 20000}"#);
    let out = dir.path().join("out");
    let o = dualhop(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--svg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&out.join("simulate_e2e_sinr.csv"));
    assert_eq!(header[1], "op_emp");
    let op = column(&header, &rows, "op_emp");
    assert!(op.windows(2).all(|w| w[1] >= w[0]));
    assert!(op[0] < 0.5 && op[40] > 0.99);
    assert!(out.join("simulate.svg").exists());
}

#[test]
fn simulate_runs_the_point_process_and_laplace_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pp");
    let cfg = write(
        dir.path(),
        "pp.json",
        r#"{"scenario": "pointprocess_check", "trials": 50, "pointprocess": {"D_min_km": [1.0], "min_points": 1000}}"#,
    );
    let o = dualhop(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&out.join("pointprocess_summary.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][1].as_str(), rows[1][1].as_str()), ("", "1"));
    assert_eq!(header[0], "process");
    let (_, cdf) = read_csv(&out.join("pointprocess_cdf.csv"));
    assert_eq!(cdf.len(), 2 * 2 * 41);

    let out = dir.path().join("lt");
    let cfg = write(dir.path(), "lt.json", r#"{"scenario": "lt_check", "trials": 2000}"#);
    let o = dualhop(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&out.join("lt_check.csv"));
    assert_eq!(header, ["d_km", "s", "empirical", "std_error", "analytic", "z"]);
    assert_eq!(rows.len(), 9);
}

#[test]
fn validate_detects_a_corrupted_xi_in_the_satellite_link() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dualhop(&["validate", "--trials", "20000", "--out", out, "--fault-xi-scale", "2"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("largest |Δ| in fso_sch"), "{}", stderr(&o));
    let (header, rows) = read_csv(&dir.path().join("validation.csv"));
    assert_eq!(rows.len(), 5 * 41);
    let delta = column(&header, &rows, "delta");
    let worst = (0..rows.len()).max_by(|a, b| delta[*a].total_cmp(&delta[*b])).unwrap();
    assert_eq!(rows[worst][0], "fso_sch");
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("doubling"));
    for line in stdout.lines().filter(|l| l.starts_with("rf_")) {
        assert!(line.ends_with("PASS"), "{line}");
    }
}

#[test]
fn diversity_reports_slopes_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dualhop(&["diversity", "--preset", "diversity-fso", "--out", out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&dir.path().join("diversity.csv"));
    let slope = column(&header, &rows, "slope");
    assert!((slope[0] / -1.21 - 1.0).abs() <= 0.05 && (slope[1] / -1.9 - 1.0).abs() <= 0.05);

    let o = dualhop(&["diversity", "--out", out]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let cfg = write(
        dir.path(),
        "short.json",
        r#"{"sweep": {"variable": "P_S_dBm", "start": 40, "stop": 42, "step": 2, "gamma_th_dB": 30}}"#,
    );
    let o = dualhop(&["diversity", "--config", &cfg, "--out", out]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stderr(&o).contains("too few"), "{}", stderr(&o));
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n \"fso\": {\"alpah\": 1}\n}");
    let o = dualhop(&["analytic", "--config", &bad]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("alpah") && stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(code(&dualhop(&["analytic", "--preset", "nope"])), 1);
    assert_eq!(code(&dualhop(&["analytic", "--config", "/nonexistent/x.json"])), 1);
    assert_eq!(code(&dualhop(&["simulate", "--trials", "0"])), 1);
    assert_eq!(code(&dualhop(&["frobnicate"])), 1);
    assert_eq!(code(&dualhop(&["--help"])), 0);
    let pp = write(dir.path(), "pp.json", r#"{"scenario": "pointprocess_check"}"#);
    assert_eq!(code(&dualhop(&["analytic", "--config", &pp])), 1);
}

#[test]
fn numeric_diagnostics_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "m40.json",
        r#"{"scenario": "rf_sir", "rf": {"m": 40}, "thresholds_dB": {"start": 0, "stop": 1, "step": 1}}"#,
    );
    let o = dualhop(&["analytic", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stderr(&o).contains("rf_sir: ") && stderr(&o).contains("maximum of 8"), "{}", stderr(&o));
}

#[test]
fn dump_defaults_round_trips_through_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = dualhop(&["dump-defaults"]);
    assert_eq!(code(&o), 0);
    let path = write(dir.path(), "d.json", &String::from_utf8(o.stdout.clone()).unwrap());
    let via_file = dir.path().join("via.json");
    let o2 = dualhop(&["dump-defaults", "--out", via_file.to_str().unwrap()]);
    assert_eq!(code(&o2), 0);
    assert_eq!(std::fs::read(&via_file).unwrap(), o.stdout);
    let out = dir.path().join("a");
    assert_eq!(code(&dualhop(&["analytic", "--config", &path, "--out", out.to_str().unwrap()])), 0);
    let list = dualhop(&["dump-defaults", "--list-presets"]);
    let names = String::from_utf8(list.stdout).unwrap();
    assert!(names.lines().any(|l| l.starts_with("fig15")));
    let p = dualhop(&["dump-defaults", "--preset", "fig7"]);
    let v: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(v["scenario"], "rf_nointerference");
}
