use serde_json::{json, Value};

use super::{merge, RunConfig};
use crate::error::{AppError, AppResult};

/// Names accepted by `--preset`, with a one-line description.
pub const PRESETS: &[(&str, &str)] = &[
    ("reference", "reference parameters, S-CH coverage versus threshold"),
    ("fig3a", "S-CH coverage versus threshold for weak, moderate and strong turbulence"),
    ("fig3b", "S-CH outage versus P_S at 30 dB for the three turbulence levels"),
    ("fig3c", "S-CH outage versus P_S at 5 dB for the three turbulence levels"),
    ("fig4a", "S-CH coverage versus threshold for several satellite altitudes"),
    ("fig4b", "S-CH outage versus P_S at 30 dB for several satellite altitudes"),
    ("fig5a", "S-CH coverage versus threshold for several pointing-error ratios"),
    ("fig5b", "S-CH outage versus P_S at 20 dB for several pointing-error ratios"),
    ("fig7", "CH-UAV coverage without interference for m = 1, 2, 5"),
    ("fig8", "CH-UAV coverage without interference for several serving radii"),
    ("fig9", "CH-UAV outage without interference versus P_R/N_R for several thresholds"),
    ("fig10", "CH-UAV SIR coverage for m = 1, 2, 5"),
    ("fig11", "CH-UAV SIR coverage for several serving radii"),
    ("fig12", "CH-UAV SIR coverage for several sensitivity radii D_max"),
    ("fig13", "CH-UAV SIR coverage for several hard-core distances D_min"),
    ("fig14", "CH-UAV SINR coverage versus P_R/N_R for several thresholds"),
    ("fig15", "dual-hop outage for the three CH-UAV models"),
    ("fig16", "point-process check, l_k distance law"),
    ("fig17", "point-process check, d_k^2 distance law"),
    ("diversity-fso", "S-CH outage slope at high P_S for omega = 1.1 and 1.5"),
    ("diversity-rf", "CH-UAV outage slope at high P_R/N_R for m = 1, 2, 5"),
];

fn curves(key: &str, values: &[(&str, Value)]) -> Value {
    Value::Array(values.iter().map(|(label, v)| json!({ "label": label, "set": { key: v } })).collect())
}

fn turbulence() -> Value {
    json!([
        { "label": "weak", "set": { "fso.alpha": 4.76, "fso.beta": 3.03 } },
        { "label": "moderate", "set": { "fso.alpha": 4.0, "fso.beta": 1.9 } },
        { "label": "strong", "set": { "fso.alpha": 4.2, "fso.beta": 1.4 } }
    ])
}

fn altitudes() -> Value {
    curves(
        "geometry.H_S_km",
        &[("H_S_20000km", json!(20000.0)), ("H_S_35761km", json!(35761.0)), ("H_S_50000km", json!(50000.0))],
    )
}

fn pointing() -> Value {
    curves("fso.omega", &[("omega_0.8", json!(0.8)), ("omega_1.1", json!(1.1)), ("omega_1.5", json!(1.5))])
}

fn nakagami() -> Value {
    curves("rf.m", &[("m_1", json!(1.0)), ("m_2", json!(2.0)), ("m_5", json!(5.0))])
}

fn p_s_sweep(gamma_db: f64) -> Value {
    json!({ "variable": "P_S_dBm", "start": 20.0, "stop": 60.0, "step": 2.0, "gamma_th_dB": gamma_db })
}

fn snr_sweep() -> Value {
    json!({ "variable": "P_R_over_N_R_dB", "start": 100.0, "stop": 180.0, "step": 2.0, "gamma_th_dB": 10.0 })
}

fn rf_thresholds() -> Value {
    json!({ "start": -10.0, "stop": 60.0, "step": 1.0 })
}

fn overrides(name: &str) -> Option<Value> {
    Some(match name {
        "reference" => json!({}),
        "fig3a" => json!({ "scenario": "fso_sch", "curves": turbulence() }),
        "fig3b" => json!({ "scenario": "fso_sch", "sweep": p_s_sweep(30.0), "curves": turbulence() }),
        "fig3c" => json!({ "scenario": "fso_sch", "sweep": p_s_sweep(5.0), "curves": turbulence() }),
        "fig4a" => json!({ "scenario": "fso_sch", "curves": altitudes() }),
        "fig4b" => json!({ "scenario": "fso_sch", "sweep": p_s_sweep(30.0), "curves": altitudes() }),
        "fig5a" => json!({ "scenario": "fso_sch", "curves": pointing() }),
        "fig5b" => json!({ "scenario": "fso_sch", "sweep": p_s_sweep(20.0), "curves": pointing() }),
        "fig7" => json!({ "scenario": "rf_nointerference", "thresholds_dB": rf_thresholds(), "curves": nakagami() }),
        "fig8" => json!({
            "scenario": "rf_nointerference",
            "thresholds_dB": rf_thresholds(),
            "curves": curves("deployment.D_km", &[("D_0.25km", json!(0.25)), ("D_0.5km", json!(0.5)), ("D_1km", json!(1.0))]),
        }),
        "fig9" => json!({
            "scenario": "rf_nointerference",
            "sweep": snr_sweep(),
            "curves": curves("sweep.gamma_th_dB", &[("gamma_10dB", json!(10.0)), ("gamma_20dB", json!(20.0)), ("gamma_30dB", json!(30.0))]),
        }),
        "fig10" => json!({ "scenario": "rf_sir", "thresholds_dB": rf_thresholds(), "curves": nakagami() }),
        "fig11" => json!({
            "scenario": "rf_sir",
            "thresholds_dB": rf_thresholds(),
            "curves": curves("deployment.D_km", &[("D_0.5km", json!(0.5)), ("D_0.75km", json!(0.75)), ("D_1km", json!(1.0))]),
        }),
        "fig12" => json!({
            "scenario": "rf_sir",
            "thresholds_dB": rf_thresholds(),
            "curves": curves("deployment.D_max_km", &[("D_max_10km", json!(10.0)), ("D_max_20km", json!(20.0)), ("D_max_40km", json!(40.0))]),
        }),
        "fig13" => json!({
            "scenario": "rf_sir",
            "thresholds_dB": rf_thresholds(),
            "curves": curves("deployment.D_min_km", &[("D_min_2km", json!(2.0)), ("D_min_4km", json!(4.0)), ("D_min_8km", json!(8.0))]),
        }),
        "fig14" => json!({
            "scenario": "rf_sinr",
            "sweep": snr_sweep(),
            "curves": curves("sweep.gamma_th_dB", &[("gamma_0dB", json!(0.0)), ("gamma_10dB", json!(10.0)), ("gamma_20dB", json!(20.0))]),
        }),
        "fig15" => json!({
            "scenario": "e2e_sinr",
            "curves": curves("scenario", &[
                ("no_interference", json!("e2e_nointerference")),
                ("sir", json!("e2e_sir")),
                ("sinr", json!("e2e_sinr")),
            ]),
        }),
        "fig16" | "fig17" => json!({
            "scenario": "pointprocess_check",
            "trials": 500,
            "pointprocess": { "D_min_km": [0.1, 1.0, 10.0], "min_points": 10000 },
        }),
        "diversity-fso" => json!({
            "scenario": "fso_sch",
            "sweep": { "variable": "P_S_dBm", "start": 40.0, "stop": 90.0, "step": 2.0, "gamma_th_dB": 10.0 },
            "curves": curves("fso.omega", &[("omega_1.1", json!(1.1)), ("omega_1.5", json!(1.5))]),
        }),
        "diversity-rf" => json!({
            "scenario": "rf_nointerference",
            "sweep": { "variable": "P_R_over_N_R_dB", "start": 100.0, "stop": 160.0, "step": 1.0, "gamma_th_dB": 30.0 },
            "curves": nakagami(),
        }),
        _ => return None,
    })
}

/// The config of a named preset.
pub fn preset(name: &str) -> AppResult<RunConfig> {
    let over = overrides(name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
        AppError::Config(format!("unknown preset `{name}` (known: {})", names.join(", ")))
    })?;
    let mut v = RunConfig::default().to_value();
    merge(&mut v, over);
    let cfg: RunConfig = serde_json::from_value(v).map_err(|e| AppError::Config(format!("preset {name}: {e}")))?;
    Ok(cfg)
}
