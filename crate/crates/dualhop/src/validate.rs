//! Analytic-versus-Monte-Carlo regression over the five link scenarios, with
//! quadrature-order doubling checks.

use dualhop_core::coverage::RfCase;
use serde::Serialize;

use crate::analytic::analytic_curve;
use crate::config::RunConfig;
use crate::error::AppResult;
use crate::sim::{self, Scenario};

/// Absolute tolerance for single-link scenarios.
pub const LINK_TOLERANCE: f64 = 1e-2;
/// Absolute tolerance for the dual-hop outage.
pub const E2E_TOLERANCE: f64 = 1.5e-2;
/// Largest change allowed when a quadrature order is doubled.
pub const DOUBLING_TOLERANCE: f64 = 1e-4;

/// Scenarios covered by [`validate`].
pub const SCENARIOS: [Scenario; 5] =
    [Scenario::FsoSch, Scenario::RfNoInterference, Scenario::RfSir, Scenario::RfSinr, Scenario::E2e(RfCase::Sinr)];

/// Deliberate corruption of the analytic side, used to check that the
/// regression notices errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fault {
    /// Factor applied to Ξ in every analytic S-CH evaluation.
    pub xi_scale: f64,
}

/// One threshold of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckRow {
    /// Threshold (dB).
    pub threshold_db: f64,
    /// Closed-form value.
    pub analytic: f64,
    /// Monte-Carlo estimate.
    pub empirical: f64,
    /// Binomial standard error of the estimate.
    pub sigma: f64,
    /// |analytic − empirical|.
    pub delta: f64,
    /// max(3σ, absolute tolerance).
    pub tolerance: f64,
    /// delta ≤ tolerance.
    pub pass: bool,
}

/// Comparison for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioCheck {
    /// Scenario name.
    pub scenario: &'static str,
    /// Absolute tolerance floor.
    pub abs_tolerance: f64,
    /// Per-threshold rows.
    pub rows: Vec<CheckRow>,
    /// Largest |Δ| over the grid.
    pub max_delta: f64,
    /// Largest change of the analytic curve when each quadrature order is doubled.
    pub doubling_delta: f64,
    /// Every row passes and the doubling change is within tolerance.
    pub pass: bool,
    /// Simulation wall time in seconds.
    pub wall_time_s: f64,
}

/// Result of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Trials per scenario.
    pub trials: u64,
    /// Base seed.
    pub seed: u64,
    /// Fault applied to the analytic side, if any.
    pub fault: Option<Fault>,
    /// One entry per scenario.
    pub checks: Vec<ScenarioCheck>,
    /// Scenario with the largest |Δ|.
    pub worst_scenario: &'static str,
    /// Every scenario passes.
    pub pass: bool,
}

/// Runs every scenario of [`SCENARIOS`] on the threshold grid of `base`.
pub fn validate(base: &RunConfig, fault: Option<Fault>) -> AppResult<ValidationReport> {
    let checks = SCENARIOS.iter().map(|s| check_scenario(base, *s, fault)).collect::<AppResult<Vec<_>>>()?;
    let worst = checks.iter().max_by(|a, b| a.max_delta.total_cmp(&b.max_delta)).expect("five scenarios");
    Ok(ValidationReport {
        trials: base.trials,
        seed: base.seed,
        fault,
        worst_scenario: worst.scenario,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

/// Compares one scenario's analytic curve with its simulation.
pub fn check_scenario(base: &RunConfig, scenario: Scenario, fault: Option<Fault>) -> AppResult<ScenarioCheck> {
    let mut cfg = base.clone();
    cfg.scenario = scenario.name().into();
    cfg.sweep = None;
    cfg.curves.clear();
    let report = sim::run(&cfg.mc_config()?)?;

    let mut analytic_cfg = cfg.clone();
    if let Some(f) = fault {
        analytic_cfg.fso.p_s_dbm -= 10.0 * f.xi_scale.log10();
    }
    let curve = analytic_curve(scenario.name(), &analytic_cfg)?;
    let abs_tolerance = if matches!(scenario, Scenario::E2e(_)) { E2E_TOLERANCE } else { LINK_TOLERANCE };
    let rows: Vec<CheckRow> = report
        .rows
        .iter()
        .zip(&curve.curve.analytic)
        .map(|(r, a)| {
            let sigma = r.estimate.sigma();
            let delta = (a.value - r.estimate.p).abs();
            let tolerance = (3.0 * sigma).max(abs_tolerance);
            CheckRow {
                threshold_db: r.threshold_db,
                analytic: a.value,
                empirical: r.estimate.p,
                sigma,
                delta,
                tolerance,
                pass: delta <= tolerance,
            }
        })
        .collect();

    let doubling_delta = doubling_change(&analytic_cfg, scenario, &curve.curve.analytic)?;
    let max_delta = rows.iter().map(|r| r.delta).fold(0.0, f64::max);
    Ok(ScenarioCheck {
        scenario: scenario.name(),
        abs_tolerance,
        pass: rows.iter().all(|r| r.pass) && doubling_delta <= DOUBLING_TOLERANCE,
        rows,
        max_delta,
        doubling_delta,
        wall_time_s: report.wall_time_s,
    })
}

/// Largest change of the curve when each quadrature order it uses is doubled
/// in turn.
pub fn doubling_change(
    cfg: &RunConfig,
    scenario: Scenario,
    reference: &[dualhop_core::coverage::Evaluated],
) -> AppResult<f64> {
    let uses_f = matches!(scenario, Scenario::FsoSch | Scenario::E2e(_));
    let uses_r = matches!(scenario, Scenario::RfSir | Scenario::RfSinr | Scenario::E2e(RfCase::Sir | RfCase::Sinr));
    let mut worst: f64 = 0.0;
    for (flag, f, r) in [(uses_f, 2, 1), (uses_r, 1, 2)] {
        if !flag {
            continue;
        }
        let mut c = cfg.clone();
        c.m_f *= f;
        c.m_r *= r;
        let doubled = analytic_curve(scenario.name(), &c)?;
        for (a, b) in reference.iter().zip(&doubled.curve.analytic) {
            worst = worst.max((a.value - b.value).abs());
        }
    }
    Ok(worst)
}
