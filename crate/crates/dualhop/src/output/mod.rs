//! CSV tables, JSON metadata sidecars and SVG charts.
//!
//! Column order is fixed per file kind. Numbers are written with `.` as the
//! decimal separator; empty fields mark values that are not defined.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::analytic::{AnalyticCurve, DiversityReport};
use crate::config::RunConfig;
use crate::error::{AppError, AppResult};
use crate::sim::{LtReport, McReport, Metric, PointProcessReport};
use crate::validate::ValidationReport;

pub use svg::{line_chart, Axis, Chart, Line};

/// Header of an analytic curve CSV; `{m}` is `cp` or `op` and `{x}` the x column.
pub const ANALYTIC_COLUMNS: [&str; 9] = [
    "{x}",
    "{m}_analytic",
    "{m}_raw",
    "clipped",
    "one_minus",
    "{m}_asymptotic",
    "{m}_asymptotic_raw",
    "asymptotic_clipped",
    "one_minus_asymptotic",
];

/// Header of a simulation CSV.
pub const SIMULATE_COLUMNS: [&str; 5] = ["{x}", "{m}_emp", "ci_lo", "ci_hi", "trials"];

/// Locale-independent decimal text; exponent form for very small magnitudes.
pub fn fmt_num(v: f64) -> String {
    if v != 0.0 && v.is_finite() && v.abs() < 1e-4 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn header(cols: &[&str], x: &str, metric: Metric) -> Vec<String> {
    let m = match metric {
        Metric::Coverage => "cp",
        Metric::Outage => "op",
    };
    cols.iter().map(|c| c.replace("{x}", x).replace("{m}", m)).collect()
}

fn csv_writer(path: &Path) -> AppResult<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(AppError::io(path))?;
    Ok(csv::Writer::from_writer(file))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> AppError + '_ {
    move |e| AppError::Io { path: path.display().to_string(), source: std::io::Error::other(e) }
}

/// Creates `dir` and its parents.
pub fn ensure_dir(dir: &Path) -> AppResult<()> {
    fs::create_dir_all(dir).map_err(AppError::io(dir))
}

/// File name stem safe for any label.
pub fn file_stem(prefix: &str, label: &str) -> String {
    let clean: String =
        label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' }).collect();
    format!("{prefix}_{clean}")
}

/// Writes one analytic curve.
pub fn write_analytic_csv(path: &Path, curve: &AnalyticCurve) -> AppResult<()> {
    let mut w = csv_writer(path)?;
    let err = csv_err(path);
    w.write_record(header(&ANALYTIC_COLUMNS, curve.x_name, curve.metric)).map_err(&err)?;
    let c = &curve.curve;
    for i in 0..c.grid.len() {
        let v = c.analytic[i];
        let mut rec = vec![
            fmt_num(c.grid[i]),
            fmt_num(v.value),
            fmt_num(v.raw),
            u8::from(v.clipped()).to_string(),
            fmt_num(curve.complement[i]),
        ];
        match (&c.asymptotic, &curve.complement_asymptotic) {
            (Some(a), Some(ca)) => rec.extend([
                fmt_num(a[i].value),
                fmt_num(a[i].raw),
                u8::from(a[i].clipped()).to_string(),
                fmt_num(ca[i]),
            ]),
            _ => rec.extend(vec![String::new(); 4]),
        }
        w.write_record(&rec).map_err(&err)?;
    }
    w.flush().map_err(AppError::io(path))
}

/// Writes the main estimates of a simulation.
pub fn write_simulate_csv(path: &Path, x_name: &str, report: &McReport) -> AppResult<()> {
    let mut w = csv_writer(path)?;
    let err = csv_err(path);
    w.write_record(header(&SIMULATE_COLUMNS, x_name, report.metric)).map_err(&err)?;
    for r in &report.rows {
        let e = &r.estimate;
        w.write_record([fmt_num(r.threshold_db), fmt_num(e.p), fmt_num(e.lo), fmt_num(e.hi), e.trials.to_string()])
            .map_err(&err)?;
    }
    w.flush().map_err(AppError::io(path))
}

/// Writes any rows given as a header and string records.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> AppResult<()> {
    let mut w = csv_writer(path)?;
    let err = csv_err(path);
    w.write_record(header).map_err(&err)?;
    for r in rows {
        w.write_record(r).map_err(&err)?;
    }
    w.flush().map_err(AppError::io(path))
}

/// Writes pretty JSON.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> AppResult<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::Io { path: path.display().to_string(), source: std::io::Error::other(e) })?;
    let mut f = fs::File::create(path).map_err(AppError::io(path))?;
    f.write_all(text.as_bytes()).and_then(|_| f.write_all(b"\n")).map_err(AppError::io(path))
}

/// Metadata common to every sidecar: parameters, quadrature orders and the
/// pole-coincidence adjustment when one was applied.
pub fn run_metadata(command: &str, label: &str, cfg: &RunConfig) -> Value {
    let perturbation = cfg.params().ok().and_then(|p| p.fso.meijer_params().ok()).and_then(|m| m.perturbation());
    json!({
        "command": command,
        "label": label,
        "scenario": cfg.scenario,
        "seed": cfg.seed,
        "quadrature": { "M_f": cfg.m_f, "M_r": cfg.m_r },
        "pole_perturbation": perturbation.map(|p| json!({ "requested": p.requested, "used": p.used })),
        "parameters": cfg.to_value(),
    })
}

/// Adds `fields` to a metadata object.
pub fn extend(mut meta: Value, fields: Value) -> Value {
    if let (Some(m), Value::Object(f)) = (meta.as_object_mut(), fields) {
        m.extend(f);
    }
    meta
}

/// Sidecar for an analytic curve: clipping summary on top of [`run_metadata`].
pub fn analytic_metadata(cfg: &RunConfig, curve: &AnalyticCurve) -> Value {
    let clipped: Vec<f64> =
        curve.curve.grid.iter().zip(&curve.curve.analytic).filter(|(_, v)| v.clipped()).map(|(x, _)| *x).collect();
    extend(
        run_metadata("analytic", &curve.label, cfg),
        json!({ "x": curve.x_name, "points": curve.curve.grid.len(), "clipped_at": clipped }),
    )
}

/// Sidecar for a simulation.
pub fn simulate_metadata(cfg: &RunConfig, label: &str, report: &McReport) -> Value {
    let aux: Vec<Value> = report
        .auxiliary
        .iter()
        .map(|s| json!({ "name": s.name, "p": s.estimates.iter().map(|e| e.p).collect::<Vec<_>>() }))
        .collect();
    extend(
        run_metadata("simulate", label, cfg),
        json!({
            "trials": report.trials,
            "interference_geometry": report.interference_geometry,
            "fso_sampling": report.fso_sampling,
            "wall_time_s": report.wall_time_s,
            "auxiliary": aux,
        }),
    )
}

/// Writes the validation table (one row per scenario and threshold).
pub fn write_validation_csv(path: &Path, report: &ValidationReport) -> AppResult<()> {
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .flat_map(|c| {
            c.rows.iter().map(move |r| {
                vec![
                    c.scenario.to_string(),
                    fmt_num(r.threshold_db),
                    fmt_num(r.analytic),
                    fmt_num(r.empirical),
                    fmt_num(r.sigma),
                    fmt_num(r.delta),
                    fmt_num(r.tolerance),
                    u8::from(r.pass).to_string(),
                ]
            })
        })
        .collect();
    write_table(
        path,
        &["scenario", "threshold_dB", "analytic", "empirical", "sigma", "delta", "tolerance", "pass"],
        &rows,
    )
}

/// Writes the diversity table.
pub fn write_diversity_csv(path: &Path, reports: &[DiversityReport]) -> AppResult<()> {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                fmt_num(r.fit_range.0),
                fmt_num(r.fit_range.1),
                r.points.to_string(),
                fmt_num(r.slope),
                fmt_num(r.predicted),
                fmt_num(r.relative_error),
                r.asymptote_gap.map(fmt_num).unwrap_or_default(),
                u8::from(r.pass).to_string(),
            ]
        })
        .collect();
    write_table(
        path,
        &["label", "x_lo", "x_hi", "points", "slope", "predicted_order", "relative_error", "asymptote_gap", "pass"],
        &rows,
    )
}

/// Writes per-process statistics and the CDF tables of a point-process check.
pub fn write_pointprocess(dir: &Path, report: &PointProcessReport) -> AppResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    let summary: Vec<Vec<String>> = report
        .processes
        .iter()
        .map(|p| {
            let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
            vec![
                p.process.to_string(),
                opt(p.d_min.map(|d| d / 1e3)),
                p.realizations.to_string(),
                fmt_num(p.retention_fraction),
                fmt_num(p.expected_fraction),
                fmt_num(p.mean_count),
                fmt_num(p.expected_mean_count),
                opt(p.min_pairwise_distance.map(|d| d / 1e3)),
                u8::from(p.hard_core_respected).to_string(),
                p.points.to_string(),
                opt(p.ks_lk),
                opt(p.ks_dk2),
                opt(p.ks_critical),
                u8::from(p.degenerate).to_string(),
            ]
        })
        .collect();
    let path = dir.join("pointprocess_summary.csv");
    write_table(
        &path,
        &[
            "process",
            "D_min_km",
            "realizations",
            "retention_fraction",
            "expected_fraction",
            "mean_count",
            "expected_mean_count",
            "min_pairwise_km",
            "hard_core_respected",
            "points",
            "ks_lk",
            "ks_dk2",
            "ks_critical",
            "degenerate",
        ],
        &summary,
    )?;
    written.push(path);
    let mut cdf_rows = Vec::new();
    for p in &report.processes {
        let tag = p.d_min.map_or("hppp".to_string(), |d| format!("mhcpp_{}", d / 1e3));
        for (var, table) in [("l_k", &p.lk_cdf), ("d_k2", &p.dk2_cdf)] {
            for c in table.iter() {
                cdf_rows.push(vec![
                    tag.clone(),
                    var.to_string(),
                    fmt_num(c.x),
                    fmt_num(c.empirical),
                    fmt_num(c.analytic),
                ]);
            }
        }
    }
    let path = dir.join("pointprocess_cdf.csv");
    write_table(&path, &["process", "variable", "x_SI", "empirical", "analytic"], &cdf_rows)?;
    written.push(path);
    Ok(written)
}

/// Writes the Laplace-transform comparison.
pub fn write_lt_csv(path: &Path, report: &LtReport) -> AppResult<()> {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                fmt_num(r.distance / 1e3),
                fmt_num(r.s),
                fmt_num(r.empirical),
                fmt_num(r.std_error),
                fmt_num(r.analytic),
                fmt_num(r.z_score()),
            ]
        })
        .collect();
    write_table(path, &["d_km", "s", "empirical", "std_error", "analytic", "z"], &rows)
}
