use dualhop::config::{preset, RunConfig, SweepVariable, PRESETS};
use dualhop::sim::{FsoSampling, InterferenceGeometry, Scenario};
use dualhop::AppError;
use std::f64::consts::PI;

fn parse(text: &str) -> Result<RunConfig, AppError> {
    RunConfig::from_json_over(&RunConfig::default(), text)
}

fn config_message(r: Result<RunConfig, AppError>) -> String {
    match r {
        Err(AppError::Config(msg)) => msg,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn defaults_are_the_reference_parameter_set() {
    let c = RunConfig::default();
    let p = c.params().unwrap();
    assert_eq!(c.geometry.h_u_km, 50.0);
    assert_eq!(c.geometry.h_s_km, 35761.0);
    assert_eq!(c.geometry.r_km, 6376.0);
    assert!((c.geometry.xi0_rad - PI / 800.0).abs() < 1e-18);
    assert_eq!((c.fso.g_s_db, c.fso.g_r_db, c.fso.wavelength_nm), (107.85, 107.85, 1550.0));
    assert_eq!((c.fso.n_f_dbm, c.rf.n_r_dbm), (-100.0, -100.0));
    assert_eq!((c.fso.eta, c.fso.a0, c.fso.omega, c.fso.p_s_dbm), (0.5, 0.5, 1.1, 40.0));
    assert_eq!((c.fso.alpha, c.fso.beta, c.fso.h_l_db), (4.0, 1.9, -0.35));
    assert_eq!(c.deployment.lambda_p_per_km3, 0.001);
    assert_eq!((c.deployment.d_km, c.deployment.d_max_km, c.deployment.d_min_km), (1.0, 20.0, 2.0));
    assert_eq!((c.rf.omega, c.rf.m, c.rf.p_r_dbm, c.rf.alpha_r, c.rf.rho), (1.0, 5.0, 30.0, 2.0, 7018.0));

    assert!((p.fso.n_f - 1e-13).abs() < 1e-25);
    assert!((p.rf.p_r - 1.0).abs() < 1e-12);
    assert_eq!(p.deployment.serving_radius, 1000.0);
    assert!((p.deployment.lambda_p - 1e-12).abs() < 1e-24);
    assert!((p.deployment.mean_interferers() - 32.92).abs() < 5e-3);
    assert_eq!(c.thresholds().unwrap().len(), 41);
    assert_eq!(c.scenario().unwrap(), Scenario::FsoSch);
}

#[test]
fn dumped_defaults_round_trip() {
    let d = RunConfig::default();
    let back = parse(&d.to_json_pretty()).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.params().unwrap(), d.params().unwrap());
    for (name, _) in PRESETS {
        let p = preset(name).unwrap();
        let back = parse(&p.to_json_pretty()).unwrap();
        assert_eq!(back, p, "{name}");
    }
}

#[test]
fn partial_documents_layer_over_the_base() {
    let c = parse(r#"{"fso": {"alpha": 4.2}, "trials": 7, "interference_geometry": "exact"}"#).unwrap();
    assert_eq!(c.fso.alpha, 4.2);
    assert_eq!(c.fso.beta, 1.9);
    assert_eq!(c.trials, 7);
    assert_eq!(c.interference_geometry, InterferenceGeometry::Exact);
    assert_eq!(c.fso_sampling, FsoSampling::Uniform);
    let over = RunConfig::from_json_over(&preset("fig3b").unwrap(), r#"{"seed": 9}"#).unwrap();
    assert_eq!(over.seed, 9);
    assert!(over.sweep.is_some() && over.curves.len() == 3);
}

#[test]
fn unknown_keys_are_rejected_with_location() {
    let msg = config_message(parse("{\n  \"fso\": {\n    \"alpah\": 4.0\n  }\n}"));
    assert!(msg.contains("alpah") && msg.contains("line 3"), "{msg}");
    let msg = config_message(parse(r#"{"trails": 10}"#));
    assert!(msg.contains("trails"), "{msg}");
    let msg = config_message(parse(r#"{"curves": [{"label": "a", "set": {"fso.alpah": 1}}]}"#).and_then(|c| {
        c.curve_configs()?;
        Ok(c)
    }));
    assert!(msg.contains("fso.alpah") && msg.contains("curve `a`"), "{msg}");
}

#[test]
fn malformed_and_invalid_documents_are_rejected() {
    config_message(parse("{\"fso\": "));
    config_message(parse(r#"{"fso": {"alpha": "four"}}"#));
    config_message(parse(r#"{"scenario": "nope"}"#));
    config_message(parse(r#"{"thresholds_dB": {"start": 10, "stop": 0, "step": 1}}"#));
    config_message(parse(r#"{"thresholds_dB": {"start": 0, "stop": 1e9, "step": 1e-3}}"#));
    config_message(parse(r#"{"trials": 0}"#));
    config_message(parse(r#"{"M_f": 0}"#));
    config_message(parse(r#"{"sweep": {"variable": "P_X"}}"#));
    let negative = parse(r#"{"fso": {"alpha": -1}}"#).unwrap();
    let msg = match negative.params() {
        Err(AppError::Config(m)) => m,
        other => panic!("{other:?}"),
    };
    assert!(msg.starts_with("fso"), "{msg}");
}

#[test]
fn load_reports_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"rf": {"mm": 2}}"#).unwrap();
    let msg = config_message(RunConfig::load(&RunConfig::default(), &path));
    assert!(msg.contains("bad.json") && msg.contains("mm"), "{msg}");
    let missing = RunConfig::load(&RunConfig::default(), &dir.path().join("none.json"));
    assert!(matches!(missing, Err(AppError::Io { .. })));
}

#[test]
fn sweeps_set_the_swept_variable() {
    let c = parse(r#"{"sweep": {"variable": "P_R_over_N_R_dB", "start": 100, "stop": 120, "step": 5}}"#).unwrap();
    let s = c.sweep.unwrap();
    assert_eq!(s.variable, SweepVariable::PrOverNrDb);
    assert_eq!(s.values().unwrap(), vec![100.0, 105.0, 110.0, 115.0, 120.0]);
    let at = c.at_sweep_value(s.variable, 110.0);
    assert_eq!(at.p_r_over_n_r_db(), 110.0);
    assert_eq!(at.rf.n_r_dbm, c.rf.n_r_dbm);
    let at = c.at_sweep_value(SweepVariable::PsDbm, 55.0);
    assert_eq!(at.fso.p_s_dbm, 55.0);
    let d = parse(r#"{"sweep": {}}"#).unwrap().sweep.unwrap();
    assert_eq!((d.variable, d.start, d.stop, d.step, d.gamma_th_db), (SweepVariable::PsDbm, 20.0, 60.0, 2.0, 30.0));
    assert_eq!(d.values().unwrap().len(), 21);
}

#[test]
fn every_preset_builds_valid_curves() {
    for (name, about) in PRESETS {
        assert!(!about.is_empty());
        let p = preset(name).unwrap();
        let curves = p.curve_configs().unwrap();
        assert!(!curves.is_empty(), "{name}");
        for (label, c) in &curves {
            c.params().unwrap_or_else(|e| panic!("{name}/{label}: {e}"));
            c.scenario().unwrap();
            assert!(c.curves.is_empty());
        }
    }
    assert!(matches!(preset("fig99"), Err(AppError::Config(_))));
}

#[test]
fn preset_curves_vary_the_documented_parameter() {
    let f = preset("fig3a").unwrap().curve_configs().unwrap();
    let turb: Vec<(f64, f64)> = f.iter().map(|(_, c)| (c.fso.alpha, c.fso.beta)).collect();
    assert_eq!(turb, vec![(4.76, 3.03), (4.0, 1.9), (4.2, 1.4)]);
    let f = preset("fig7").unwrap().curve_configs().unwrap();
    assert_eq!(f.iter().map(|(_, c)| c.rf.m).collect::<Vec<_>>(), vec![1.0, 2.0, 5.0]);
    let f = preset("fig15").unwrap().curve_configs().unwrap();
    let s: Vec<&str> = f.iter().map(|(_, c)| c.scenario.as_str()).collect();
    assert_eq!(s, vec!["e2e_nointerference", "e2e_sir", "e2e_sinr"]);
    let f = preset("fig9").unwrap().curve_configs().unwrap();
    assert!(f.iter().all(|(_, c)| c.sweep.unwrap().variable == SweepVariable::PrOverNrDb));
}
