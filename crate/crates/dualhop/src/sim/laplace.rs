use std::time::Instant;

use dualhop_core::coverage::laplace_interference;
use dualhop_core::stochgeom::Point3;
use rayon::prelude::*;
use serde::Serialize;

use super::{trial_rng, InterferenceGeometry, McConfig, RfTrialModel, Scenario};
use crate::error::{AppError, AppResult};

/// Trials per deterministic partial sum.
const CHUNK: u64 = 4096;

/// Empirical E[e^{−sI}] at one (d, s) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LtRow {
    /// CH–UAV distance (m).
    pub distance: f64,
    /// Transform variable.
    pub s: f64,
    /// Sample mean of e^{−sI}.
    pub empirical: f64,
    /// Standard error of the sample mean.
    pub std_error: f64,
    /// Closed-form value.
    pub analytic: f64,
}

impl LtRow {
    /// (empirical − analytic)/standard error.
    pub fn z_score(&self) -> f64 {
        (self.empirical - self.analytic) / self.std_error.max(f64::MIN_POSITIVE)
    }
}

/// Result of [`run_lt_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LtReport {
    /// Base seed.
    pub seed: u64,
    /// Interference draws per distance.
    pub trials: u64,
    /// Interferer placement used.
    pub interference_geometry: InterferenceGeometry,
    /// One row per (distance, s), distances outermost.
    pub rows: Vec<LtRow>,
    /// Elapsed time in seconds.
    pub wall_time_s: f64,
}

/// Compares the empirical Laplace transform of the interference with the
/// closed form. The same draws are reused for every `s` at a given distance.
pub fn run_lt_check(cfg: &McConfig, s_values: &[f64], distances: &[f64]) -> AppResult<LtReport> {
    cfg.validate()?;
    if cfg.scenario != Scenario::LtCheck {
        return Err(AppError::Config(format!("scenario {} is not an LT check", cfg.scenario.name())));
    }
    if s_values.is_empty() || s_values.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return Err(AppError::Config("s values must be positive and finite".into()));
    }
    let serving = cfg.deployment.serving_radius;
    if distances.is_empty() || distances.iter().any(|d| !(*d > 0.0 && *d <= serving)) {
        return Err(AppError::Config("distances must lie in (0, D]".into()));
    }
    let start = Instant::now();
    let model = RfTrialModel::new(cfg)?;
    let mut rows = Vec::new();
    for (j, &d) in distances.iter().enumerate() {
        let uav = Point3::new(d, 0.0, 0.0);
        let chunks = cfg.trials.div_ceil(CHUNK);
        let partial = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut sums = vec![(0.0, 0.0); s_values.len()];
                for i in c * CHUNK..((c + 1) * CHUNK).min(cfg.trials) {
                    let mut rng = trial_rng(cfg.seed, ((j as u64) << 40) | i);
                    let (interference, _) = model.draw_interference(uav, &mut rng)?;
                    for (acc, s) in sums.iter_mut().zip(s_values) {
                        let v = (-s * interference).exp();
                        acc.0 += v;
                        acc.1 += v * v;
                    }
                }
                Ok(sums)
            })
            .collect::<dualhop_core::Result<Vec<_>>>()?;
        let n = cfg.trials as f64;
        for (k, &s) in s_values.iter().enumerate() {
            let (sum, sq) = partial.iter().fold((0.0, 0.0), |a, p| (a.0 + p[k].0, a.1 + p[k].1));
            let mean = sum / n;
            let var = ((sq / n - mean * mean) * n / (n - 1.0).max(1.0)).max(0.0);
            let analytic = laplace_interference(s, d, &cfg.rf, &cfg.deployment)
                .map_err(AppError::context(format!("Laplace transform at s = {s:e}, d = {d} m")))?;
            rows.push(LtRow { distance: d, s, empirical: mean, std_error: (var / n).sqrt(), analytic });
        }
    }
    Ok(LtReport {
        seed: cfg.seed,
        trials: cfg.trials,
        interference_geometry: cfg.interference_geometry,
        rows,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
