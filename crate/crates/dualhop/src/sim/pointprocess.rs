use std::time::Instant;

use dualhop_core::stochgeom::{cdf_dk2, cdf_lk, mhcpp_intensity, sample_hppp, sample_mhcpp, EdgeMode, PointSample};
use rayon::prelude::*;
use serde::Serialize;

use super::{trial_rng, McConfig, Scenario};
use crate::error::{AppError, AppResult};

/// Realizations drawn per parallel batch.
const BATCH: u64 = 64;
/// Below this expected candidate count the region is treated as empty.
const DEGENERATE_MEAN: f64 = 1e-3;
/// Upper bound on realizations spent collecting KS points.
const MAX_REALIZATIONS: u64 = 1_000_000;

/// Statistics of one process (HPPP, or MHCPP at one D_min).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessSummary {
    /// `hppp` or `mhcpp`.
    pub process: &'static str,
    /// Hard-core distance (m); `None` for the HPPP.
    pub d_min: Option<f64>,
    /// Realizations drawn.
    pub realizations: u64,
    /// Candidate points inside the region, summed over realizations.
    pub candidates: u64,
    /// Retained points inside the region, summed over realizations.
    pub retained: u64,
    /// retained / candidates.
    pub retention_fraction: f64,
    /// λ_CH/λ_P from the intensity relation.
    pub expected_fraction: f64,
    /// Mean retained count per realization.
    pub mean_count: f64,
    /// Standard deviation of the retained count.
    pub count_std: f64,
    /// λ_CH·V.
    pub expected_mean_count: f64,
    /// Smallest pairwise distance seen in any realization (m).
    pub min_pairwise_distance: Option<f64>,
    /// Every realization respects the hard core.
    pub hard_core_respected: bool,
    /// KS distance of the pooled l_k sample to its analytic CDF.
    pub ks_lk: Option<f64>,
    /// KS distance of the pooled d_k² sample to its analytic CDF.
    pub ks_dk2: Option<f64>,
    /// 1% critical value 1.628/√n for the pooled sample size.
    pub ks_critical: Option<f64>,
    /// Pooled points used for the KS distances.
    pub points: u64,
    /// λ_P·V below 1e-3: nothing was sampled.
    pub degenerate: bool,
    /// Empirical and analytic CDF of l_k on an even grid over the sample range.
    pub lk_cdf: Vec<CdfPoint>,
    /// Empirical and analytic CDF of d_k² on an even grid over the sample range.
    pub dk2_cdf: Vec<CdfPoint>,
}

/// One point of a CDF comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfPoint {
    /// Abscissa.
    pub x: f64,
    /// Fraction of the sample at or below `x`.
    pub empirical: f64,
    /// Analytic CDF at `x`.
    pub analytic: f64,
}

/// Grid points in each CDF table.
const CDF_POINTS: usize = 41;

impl ProcessSummary {
    /// |retention / expected − 1|.
    pub fn retention_error(&self) -> f64 {
        (self.retention_fraction / self.expected_fraction - 1.0).abs()
    }

    /// Both KS distances are below the critical value.
    pub fn ks_pass(&self) -> bool {
        match (self.ks_lk, self.ks_dk2, self.ks_critical) {
            (Some(a), Some(b), Some(c)) => a <= c && b <= c,
            _ => false,
        }
    }
}

/// Result of [`run_pointprocess_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointProcessReport {
    /// Base seed.
    pub seed: u64,
    /// HPPP first, then one entry per D_min.
    pub processes: Vec<ProcessSummary>,
    /// Elapsed time in seconds.
    pub wall_time_s: f64,
}

struct Draw {
    candidates: u64,
    sample: PointSample,
}

/// Draws HPPP and MHCPP realizations in the spherical-cone shell and compares
/// retention and the l_k, d_k² laws with the analytic results. At least
/// `cfg.trials` realizations are drawn per process, more until `min_points`
/// points are pooled for the KS distances.
pub fn run_pointprocess_check(cfg: &McConfig, d_min_list: &[f64], min_points: u64) -> AppResult<PointProcessReport> {
    cfg.validate()?;
    if cfg.scenario != Scenario::PointProcessCheck {
        return Err(AppError::Config(format!("scenario {} is not a point-process check", cfg.scenario.name())));
    }
    if d_min_list.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(AppError::Config("D_min values must be positive".into()));
    }
    let lambda_p = cfg.deployment.lambda_p;
    if !(lambda_p >= 0.0 && lambda_p.is_finite()) {
        return Err(AppError::Config("lambda_P must be nonnegative".into()));
    }
    let start = Instant::now();
    let mut processes = vec![summarize(cfg, 0, None, min_points)?];
    for (k, &d) in d_min_list.iter().enumerate() {
        processes.push(summarize(cfg, k as u64 + 1, Some(d), min_points)?);
    }
    Ok(PointProcessReport { seed: cfg.seed, processes, wall_time_s: start.elapsed().as_secs_f64() })
}

fn summarize(cfg: &McConfig, key: u64, d_min: Option<f64>, min_points: u64) -> AppResult<ProcessSummary> {
    let geom = &cfg.geometry;
    let region = geom.region();
    let lambda_p = cfg.deployment.lambda_p;
    let expected_fraction = d_min.map_or(1.0, |d| mhcpp_intensity(lambda_p, d) / lambda_p);
    let mut s = ProcessSummary {
        process: if d_min.is_some() { "mhcpp" } else { "hppp" },
        d_min,
        realizations: 0,
        candidates: 0,
        retained: 0,
        retention_fraction: f64::NAN,
        expected_fraction,
        mean_count: 0.0,
        count_std: 0.0,
        expected_mean_count: lambda_p * expected_fraction * region.volume(),
        min_pairwise_distance: None,
        hard_core_respected: true,
        ks_lk: None,
        ks_dk2: None,
        ks_critical: None,
        points: 0,
        degenerate: lambda_p * region.volume() < DEGENERATE_MEAN,
        lk_cdf: Vec::new(),
        dk2_cdf: Vec::new(),
    };
    if s.degenerate {
        return Ok(s);
    }
    let (mut lk, mut dk2, mut counts) = (Vec::new(), Vec::new(), Vec::new());
    let satellite = geom.satellite();
    while s.realizations < cfg.trials || (lk.len() as u64) < min_points && s.realizations < MAX_REALIZATIONS {
        let first = s.realizations;
        let draws = (first..first + BATCH)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(cfg.seed, (key << 40) | i);
                Ok(match d_min {
                    None => {
                        let sample = sample_hppp(&region, lambda_p, &mut rng)?;
                        Draw { candidates: sample.len() as u64, sample }
                    }
                    Some(d) => {
                        let r = sample_mhcpp(&region, lambda_p, d, EdgeMode::Guarded, &mut rng)?;
                        Draw { candidates: r.candidates_in_region as u64, sample: r.retained }
                    }
                })
            })
            .collect::<dualhop_core::Result<Vec<_>>>()?;
        for draw in draws {
            s.realizations += 1;
            s.candidates += draw.candidates;
            s.retained += draw.sample.len() as u64;
            counts.push(draw.sample.len() as f64);
            if let Some(min) = draw.sample.min_pairwise_distance() {
                s.min_pairwise_distance = Some(s.min_pairwise_distance.map_or(min, |m: f64| m.min(min)));
                if d_min.is_some_and(|d| min < d) {
                    s.hard_core_respected = false;
                }
            }
            for p in &draw.sample.positions {
                lk.push(p.norm());
                dk2.push(p.dist_sq(satellite));
            }
        }
    }
    let n = counts.len() as f64;
    s.mean_count = counts.iter().sum::<f64>() / n;
    s.count_std = (counts.iter().map(|c| (c - s.mean_count).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)).sqrt();
    s.retention_fraction = s.retained as f64 / s.candidates.max(1) as f64;
    s.points = lk.len() as u64;
    if !lk.is_empty() {
        s.ks_lk = Some(ks_distance(&mut lk, |x| Ok(cdf_lk(x, geom)))?);
        s.ks_dk2 = Some(ks_distance(&mut dk2, |y| cdf_dk2(y, geom))?);
        s.ks_critical = Some(1.628 / (lk.len() as f64).sqrt());
        s.lk_cdf = cdf_table(&lk, |x| Ok(cdf_lk(x, geom)))?;
        s.dk2_cdf = cdf_table(&dk2, |y| cdf_dk2(y, geom))?;
    }
    Ok(s)
}

/// Tabulates a sorted sample's ECDF next to `cdf`.
fn cdf_table(sorted: &[f64], cdf: impl Fn(f64) -> dualhop_core::Result<f64>) -> AppResult<Vec<CdfPoint>> {
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let n = sorted.len() as f64;
    (0..CDF_POINTS)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (CDF_POINTS - 1) as f64;
            let below = sorted.partition_point(|v| *v <= x) as f64;
            Ok(CdfPoint { x, empirical: below / n, analytic: cdf(x)? })
        })
        .collect()
}

/// Kolmogorov–Smirnov distance between a sample and a CDF; sorts the sample.
pub fn ks_distance(sample: &mut [f64], cdf: impl Fn(f64) -> dualhop_core::Result<f64> + Sync) -> AppResult<f64> {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    let gaps = sample
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let f = cdf(*x)?;
            Ok(((i + 1) as f64 / n - f).max(f - i as f64 / n))
        })
        .collect::<dualhop_core::Result<Vec<f64>>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max))
}
