//! Command-line entry point.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::analytic::{analytic_curve, diversity, AnalyticCurve};
use crate::config::{preset, GridSpec, RunConfig, PRESETS};
use crate::error::{AppError, AppResult};
use crate::output::{self, fmt_num, line_chart, Axis, Chart, Line};
use crate::sim::{self, McReport, Metric, Scenario, ThresholdEstimate};
use crate::validate::{validate, Fault};

/// Coverage analysis of satellite → cluster-head → UAV links.
#[derive(Debug, Parser)]
#[command(name = "dualhop", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate closed-form curves.
    Analytic(CommonArgs),
    /// Run Monte-Carlo simulations.
    Simulate(CommonArgs),
    /// Compare closed forms with simulations for every link scenario.
    Validate(ValidateArgs),
    /// Fit the high-SNR slope of a transmit-power sweep.
    Diversity(CommonArgs),
    /// Print the default (or a preset) configuration as JSON.
    DumpDefaults(DumpArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON config layered over the defaults or the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named preset used as the base configuration.
    #[arg(long)]
    preset: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte-Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Also write SVG charts.
    #[arg(long)]
    svg: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Multiply Ξ by this factor on the analytic side only.
    #[arg(long, hide = true)]
    fault_xi_scale: Option<f64>,
}

#[derive(Debug, Args)]
struct DumpArgs {
    /// Dump this preset instead of the defaults.
    #[arg(long)]
    preset: Option<String>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// List preset names and exit.
    #[arg(long)]
    list_presets: bool,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command.
pub fn run(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::Analytic(a) => cmd_analytic(&resolve(&a)?),
        Command::Simulate(a) => cmd_simulate(&resolve(&a)?),
        Command::Validate(a) => {
            let fault = match a.fault_xi_scale {
                Some(s) if s > 0.0 && s.is_finite() => Some(Fault { xi_scale: s }),
                Some(s) => return Err(AppError::Config(format!("fault scale must be positive, got {s}"))),
                None => None,
            };
            cmd_validate(&resolve(&a.common)?, fault)
        }
        Command::Diversity(a) => cmd_diversity(&resolve(&a)?),
        Command::DumpDefaults(a) => cmd_dump(&a),
    }
}

/// Base config from the preset or defaults, the file on top, then flags.
fn resolve(a: &CommonArgs) -> AppResult<RunConfig> {
    let base = match &a.preset {
        Some(name) => preset(name)?,
        None => RunConfig::default(),
    };
    let mut cfg = match &a.config {
        Some(path) => RunConfig::load(&base, path)?,
        None => base,
    };
    if let Some(out) = &a.out {
        cfg.out_dir = out.clone();
    }
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = a.trials {
        if trials == 0 {
            return Err(AppError::Config("trials must be at least 1".into()));
        }
        cfg.trials = trials;
    }
    cfg.svg |= a.svg;
    Ok(cfg)
}

fn cmd_dump(a: &DumpArgs) -> AppResult<()> {
    if a.list_presets {
        for (name, about) in PRESETS {
            println!("{name:<14} {about}");
        }
        return Ok(());
    }
    let cfg = match &a.preset {
        Some(name) => preset(name)?,
        None => RunConfig::default(),
    };
    let text = cfg.to_json_pretty() + "\n";
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(AppError::io(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn metric_name(m: Metric) -> &'static str {
    match m {
        Metric::Coverage => "CP",
        Metric::Outage => "OP",
    }
}

fn written(path: &Path) {
    println!("wrote {}", path.display());
}

fn cmd_analytic(cfg: &RunConfig) -> AppResult<()> {
    let dir = &cfg.out_dir;
    output::ensure_dir(dir)?;
    let mut curves = Vec::new();
    for (label, c) in cfg.curve_configs()? {
        let curve = analytic_curve(&label, &c)?;
        let stem = output::file_stem("analytic", &label);
        let csv = dir.join(format!("{stem}.csv"));
        output::write_analytic_csv(&csv, &curve)?;
        output::write_json(&dir.join(format!("{stem}.json")), &output::analytic_metadata(&c, &curve))?;
        written(&csv);
        curves.push(curve);
    }
    if cfg.svg {
        let path = dir.join("analytic.svg");
        std::fs::write(&path, line_chart(&analytic_chart(cfg, &curves))).map_err(AppError::io(&path))?;
        written(&path);
    }
    Ok(())
}

fn analytic_chart(cfg: &RunConfig, curves: &[AnalyticCurve]) -> Chart {
    let sweep = cfg.sweep.is_some();
    let first = &curves[0];
    let y_label = match (sweep, first.metric) {
        (true, Metric::Coverage) => "1 − CP".to_string(),
        (true, Metric::Outage) => "1 − OP".to_string(),
        (false, m) => metric_name(m).to_string(),
    };
    let mut lines = Vec::new();
    for c in curves {
        let ys: Vec<f64> =
            if sweep { c.complement.clone() } else { c.curve.analytic.iter().map(|v| v.value).collect() };
        lines.push(Line {
            label: c.label.clone(),
            points: c.curve.grid.iter().copied().zip(ys).collect(),
            dashed: false,
        });
        if let (true, Some(a)) = (sweep, &c.complement_asymptotic) {
            lines.push(Line {
                label: format!("{} (asymptote)", c.label),
                points: c.curve.grid.iter().copied().zip(a.iter().copied()).collect(),
                dashed: true,
            });
        }
    }
    Chart {
        title: format!("{} analytic", first.scenario.name()),
        x: Axis { label: first.x_name.to_string(), log: false },
        y: Axis { label: y_label, log: sweep },
        lines,
    }
}

fn cmd_simulate(cfg: &RunConfig) -> AppResult<()> {
    let dir = &cfg.out_dir;
    output::ensure_dir(dir)?;
    match cfg.scenario()? {
        Scenario::PointProcessCheck => return simulate_pointprocess(cfg),
        Scenario::LtCheck => return simulate_lt(cfg),
        _ => {}
    }
    let mut lines = Vec::new();
    let mut metric = Metric::Coverage;
    let mut x_label = "threshold_dB";
    for (label, c) in cfg.curve_configs()? {
        let (x_name, report) = simulate_curve(&c)?;
        let stem = output::file_stem("simulate", &label);
        let csv = dir.join(format!("{stem}.csv"));
        output::write_simulate_csv(&csv, x_name, &report)?;
        output::write_json(&dir.join(format!("{stem}.json")), &output::simulate_metadata(&c, &label, &report))?;
        written(&csv);
        println!("{label}: {} trials per point, {:.2} s", report.trials, report.wall_time_s);
        metric = report.metric;
        x_label = x_name;
        let sweep = c.sweep.is_some();
        let points = report
            .rows
            .iter()
            .map(|r| (r.threshold_db, if sweep { 1.0 - r.estimate.p } else { r.estimate.p }))
            .collect();
        lines.push(Line { label, points, dashed: false });
    }
    if cfg.svg {
        let sweep = cfg.sweep.is_some();
        let chart = Chart {
            title: format!("{} simulation", cfg.scenario),
            x: Axis { label: x_label.into(), log: false },
            y: Axis {
                label: if sweep { format!("1 − {}", metric_name(metric)) } else { metric_name(metric).into() },
                log: sweep,
            },
            lines,
        };
        let path = dir.join("simulate.svg");
        std::fs::write(&path, line_chart(&chart)).map_err(AppError::io(&path))?;
        written(&path);
    }
    Ok(())
}

/// One simulated curve; sweeps run one single-threshold simulation per value
/// and report the swept value in the x column.
fn simulate_curve(cfg: &RunConfig) -> AppResult<(&'static str, McReport)> {
    let Some(sweep) = cfg.sweep else {
        return Ok(("threshold_dB", sim::run(&cfg.mc_config()?)?));
    };
    let mut rows = Vec::new();
    let mut last = None;
    let mut wall = 0.0;
    for x in sweep.values()? {
        let mut at = cfg.at_sweep_value(sweep.variable, x);
        at.thresholds_db = GridSpec { start: sweep.gamma_th_db, stop: sweep.gamma_th_db, step: 1.0 };
        let r = sim::run(&at.mc_config()?)?;
        wall += r.wall_time_s;
        rows.push(ThresholdEstimate { threshold_db: x, estimate: r.rows[0].estimate });
        last = Some(r);
    }
    let mut report = last.expect("sweep has at least one value");
    report.rows = rows;
    report.auxiliary.clear();
    report.wall_time_s = wall;
    Ok((sweep.variable.name(), report))
}

fn simulate_pointprocess(cfg: &RunConfig) -> AppResult<()> {
    let mc = cfg.mc_config()?;
    let d_min: Vec<f64> = cfg.pointprocess.d_min_km.iter().map(|d| d * 1e3).collect();
    let report = sim::run_pointprocess_check(&mc, &d_min, cfg.pointprocess.min_points)?;
    for p in output::write_pointprocess(&cfg.out_dir, &report)? {
        written(&p);
    }
    let meta = output::extend(output::run_metadata("simulate", "pointprocess", cfg), json!({ "report": report }));
    output::write_json(&cfg.out_dir.join("pointprocess.json"), &meta)?;
    for p in &report.processes {
        let d = p.d_min.map_or("-".to_string(), |d| format!("{} km", d / 1e3));
        if p.degenerate {
            println!("{:<6} D_min {d:<8} degenerate (λ_P·V below threshold)", p.process);
            continue;
        }
        println!(
            "{:<6} D_min {d:<8} retention {} (expected {})  KS l_k {} d_k² {} (critical {})",
            p.process,
            fmt_num(p.retention_fraction),
            fmt_num(p.expected_fraction),
            p.ks_lk.map(fmt_num).unwrap_or_default(),
            p.ks_dk2.map(fmt_num).unwrap_or_default(),
            p.ks_critical.map(fmt_num).unwrap_or_default(),
        );
    }
    Ok(())
}

fn simulate_lt(cfg: &RunConfig) -> AppResult<()> {
    let mc = cfg.mc_config()?;
    let distances: Vec<f64> = cfg.lt.d_over_d.iter().map(|f| f * mc.deployment.serving_radius).collect();
    let report = sim::run_lt_check(&mc, &cfg.lt.s, &distances)?;
    let csv = cfg.out_dir.join("lt_check.csv");
    output::write_lt_csv(&csv, &report)?;
    let meta = output::extend(output::run_metadata("simulate", "lt_check", cfg), json!({ "report": report }));
    output::write_json(&cfg.out_dir.join("lt_check.json"), &meta)?;
    written(&csv);
    for r in &report.rows {
        println!(
            "d {} km  s {:e}  empirical {}  analytic {}  z {:.2}",
            r.distance / 1e3,
            r.s,
            fmt_num(r.empirical),
            fmt_num(r.analytic),
            r.z_score()
        );
    }
    Ok(())
}

fn cmd_validate(cfg: &RunConfig, fault: Option<Fault>) -> AppResult<()> {
    output::ensure_dir(&cfg.out_dir)?;
    let report = validate(cfg, fault)?;
    let csv = cfg.out_dir.join("validation.csv");
    output::write_validation_csv(&csv, &report)?;
    let meta = output::extend(output::run_metadata("validate", "validation", cfg), json!({ "report": report }));
    output::write_json(&cfg.out_dir.join("validation.json"), &meta)?;
    written(&csv);
    for c in &report.checks {
        println!(
            "{:<18} max|Δ| {:.3e} (floor {:.1e})  doubling {:.1e}  {}",
            c.scenario,
            c.max_delta,
            c.abs_tolerance,
            c.doubling_delta,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    if report.pass {
        println!("validation PASS");
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.scenario).collect();
        Err(AppError::Validation(format!(
            "failed scenarios: {}; largest |Δ| in {}",
            failed.join(", "),
            report.worst_scenario
        )))
    }
}

fn cmd_diversity(cfg: &RunConfig) -> AppResult<()> {
    output::ensure_dir(&cfg.out_dir)?;
    let mut reports = Vec::new();
    for (label, c) in cfg.curve_configs()? {
        let curve = analytic_curve(&label, &c)?;
        let r = diversity(&curve, &c)?;
        println!(
            "{label}: slope {:.4} over {}..{} ({} points), predicted −{:.4}, error {:.2}%{}  {}",
            r.slope,
            r.fit_range.0,
            r.fit_range.1,
            r.points,
            r.predicted,
            100.0 * r.relative_error,
            r.asymptote_gap.map(|g| format!(", asymptote gap {:.2}%", 100.0 * g)).unwrap_or_default(),
            if r.pass { "PASS" } else { "FAIL" }
        );
        reports.push(r);
    }
    let csv = cfg.out_dir.join("diversity.csv");
    output::write_diversity_csv(&csv, &reports)?;
    let meta = output::extend(output::run_metadata("diversity", "diversity", cfg), json!({ "report": reports }));
    output::write_json(&cfg.out_dir.join("diversity.json"), &meta)?;
    written(&csv);
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(AppError::Validation("fitted slope differs from the predicted diversity order by more than 5%".into()))
    }
}
