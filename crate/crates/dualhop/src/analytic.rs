//! Analytic curves over a threshold grid or a transmit-power sweep, and the
//! high-SNR slope fit.

use dualhop_core::coverage::{
    cdf_rf_nointerference, diversity_order_rf, diversity_order_sch, op_e2e, outage_rf_nointerference_asymptotic,
    CoverageCurve, Evaluated, RfCoverage, SchModel,
};
use dualhop_core::units::db_to_linear;
use dualhop_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{AppError, AppResult};
use crate::sim::{Metric, Scenario};

/// One analytic curve with the complement of its metric kept at full precision.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCurve {
    /// Curve label.
    pub label: String,
    /// Evaluated expression.
    pub scenario: Scenario,
    /// Name of the x column (`threshold_dB` or the swept variable).
    pub x_name: &'static str,
    /// Coverage for link scenarios, outage for dual-hop ones.
    pub metric: Metric,
    /// Grid, exact values and asymptote of the metric.
    pub curve: CoverageCurve,
    /// 1 − metric, computed without cancellation where the model allows.
    pub complement: Vec<f64>,
    /// 1 − asymptote, where an asymptote exists.
    pub complement_asymptotic: Option<Vec<f64>>,
}

struct Point {
    value: Evaluated,
    complement: f64,
    asymptotic: Option<(Evaluated, f64)>,
}

/// Curves for every entry of `cfg.curves` (or the single base curve).
pub fn analytic_curves(cfg: &RunConfig) -> AppResult<Vec<AnalyticCurve>> {
    cfg.curve_configs()?.iter().map(|(label, c)| analytic_curve(label, c)).collect()
}

/// The curve described by `cfg`, ignoring `cfg.curves`.
pub fn analytic_curve(label: &str, cfg: &RunConfig) -> AppResult<AnalyticCurve> {
    let scenario = cfg.scenario()?;
    if matches!(scenario, Scenario::PointProcessCheck | Scenario::LtCheck) {
        return Err(AppError::Config(format!("scenario {} has no analytic curve", scenario.name())));
    }
    let (x_name, points) = match &cfg.sweep {
        None => {
            let grid = cfg.thresholds()?;
            let model = Model::new(cfg, scenario, label)?;
            let pts = grid
                .par_iter()
                .map(|x| model.point(db_to_linear(*x)).map_err(AppError::context(format!("{label} at {x} dB"))))
                .collect::<AppResult<Vec<_>>>()?;
            ("threshold_dB", grid.into_iter().zip(pts).collect::<Vec<_>>())
        }
        Some(sweep) => {
            let grid = sweep.values()?;
            let gamma = db_to_linear(sweep.gamma_th_db);
            let name = sweep.variable.name();
            let pts = grid
                .par_iter()
                .map(|x| {
                    let at = cfg.at_sweep_value(sweep.variable, *x);
                    Model::new(&at, scenario, &format!("{label} at {name} = {x}"))?
                        .point(gamma)
                        .map_err(AppError::context(format!("{label} at {name} = {x}")))
                })
                .collect::<AppResult<Vec<_>>>()?;
            (name, grid.into_iter().zip(pts).collect())
        }
    };
    let has_asym = points.iter().all(|(_, p)| p.asymptotic.is_some());
    Ok(AnalyticCurve {
        label: label.to_string(),
        scenario,
        x_name,
        metric: scenario.metric(),
        curve: CoverageCurve {
            grid: points.iter().map(|(x, _)| *x).collect(),
            analytic: points.iter().map(|(_, p)| p.value).collect(),
            asymptotic: has_asym.then(|| points.iter().map(|(_, p)| p.asymptotic.unwrap().0).collect()),
        },
        complement: points.iter().map(|(_, p)| p.complement).collect(),
        complement_asymptotic: has_asym.then(|| points.iter().map(|(_, p)| p.asymptotic.unwrap().1).collect()),
    })
}

/// Precomputed evaluators for one parameter set.
struct Model {
    scenario: Scenario,
    sch: Option<SchModel>,
    rf: Option<RfCoverage>,
    serving_radius: f64,
}

impl Model {
    fn new(cfg: &RunConfig, scenario: Scenario, context: &str) -> AppResult<Self> {
        let p = cfg.params()?;
        let sch = match scenario {
            Scenario::FsoSch | Scenario::E2e(_) => {
                Some(SchModel::new(&p.geometry, &p.fso, cfg.m_f).map_err(AppError::context(context))?)
            }
            _ => None,
        };
        let rf = match scenario {
            Scenario::FsoSch => None,
            _ => Some(RfCoverage::new(&p.rf, &p.deployment, cfg.m_r).map_err(AppError::context(context))?),
        };
        Ok(Self { scenario, sch, rf, serving_radius: p.deployment.serving_radius })
    }

    fn point(&self, gamma: f64) -> dualhop_core::Result<Point> {
        let coverage = |outage: f64, asym: Option<f64>| Point {
            value: Evaluated::new(1.0 - outage),
            complement: outage,
            asymptotic: asym.map(|a| (Evaluated::new(1.0 - a), a)),
        };
        match self.scenario {
            Scenario::FsoSch => {
                let sch = self.sch.as_ref().expect("fso model");
                Ok(coverage(sch.cdf(gamma)?, Some(sch.outage_asymptotic(gamma)?)))
            }
            Scenario::RfNoInterference => {
                let rf = self.rf.as_ref().expect("rf model");
                let outage = cdf_rf_nointerference(gamma, rf.rf(), self.serving_radius)?;
                Ok(coverage(outage, Some(outage_rf_nointerference_asymptotic(gamma, rf.rf(), self.serving_radius)?)))
            }
            Scenario::RfSir | Scenario::RfSinr => {
                let rf = self.rf.as_ref().expect("rf model");
                let v = if self.scenario == Scenario::RfSir { rf.cp_sir(gamma)? } else { rf.cp_sinr(gamma)? };
                Ok(Point { value: v, complement: 1.0 - v.value, asymptotic: None })
            }
            Scenario::E2e(case) => {
                let op =
                    op_e2e(gamma, self.sch.as_ref().expect("fso model"), self.rf.as_ref().expect("rf model"), case)?;
                Ok(Point { value: Evaluated::new(op), complement: 1.0 - op, asymptotic: None })
            }
            Scenario::PointProcessCheck | Scenario::LtCheck => Err(Error::Domain("no analytic curve")),
        }
    }
}

/// High-SNR slope of one curve compared with the predicted diversity order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiversityReport {
    /// Curve label.
    pub label: String,
    /// Swept variable.
    pub x_name: &'static str,
    /// Lowest and highest x used in the fit.
    pub fit_range: (f64, f64),
    /// Points in the fit.
    pub points: usize,
    /// d log₁₀(1 − CP) / d log₁₀(transmit SNR); negative.
    pub slope: f64,
    /// min{ω², α, β} for the S-CH link, m for the CH-UAV link.
    pub predicted: f64,
    /// |−slope/predicted − 1|.
    pub relative_error: f64,
    /// Largest |asymptote/exact − 1| of 1 − CP over the fit range.
    pub asymptote_gap: Option<f64>,
    /// relative_error ≤ 5%.
    pub pass: bool,
}

/// Tolerance on the fitted slope.
pub const SLOPE_TOLERANCE: f64 = 0.05;

/// Fits the slope over the top decade (last 10 dB) of a transmit-power sweep.
pub fn diversity(curve: &AnalyticCurve, cfg: &RunConfig) -> AppResult<DiversityReport> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| AppError::Config(format!("curve `{}`: diversity needs a transmit-power sweep", curve.label)))?;
    let p = cfg.params()?;
    let predicted = match curve.scenario {
        Scenario::FsoSch => diversity_order_sch(&p.fso),
        Scenario::RfNoInterference => diversity_order_rf(&p.rf),
        s => {
            return Err(AppError::Config(format!(
                "diversity is defined for fso_sch and rf_nointerference, not {}",
                s.name()
            )))
        }
    };
    let top = curve.curve.grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let idx: Vec<usize> = (0..curve.curve.grid.len())
        .filter(|&i| {
            curve.curve.grid[i] >= top - 10.0 - 1e-9 && curve.complement[i] > 0.0 && curve.complement[i].is_finite()
        })
        .collect();
    if idx.len() < 3 {
        return Err(AppError::Numeric {
            context: format!("curve `{}` (sweep {} to {}): ", curve.label, sweep.start, sweep.stop),
            source: Error::Numeric {
                what: "too few positive high-SNR points for a slope fit",
                value: idx.len() as f64,
            },
        });
    }
    let xs: Vec<f64> = idx.iter().map(|&i| curve.curve.grid[i] / 10.0).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| curve.complement[i].log10()).collect();
    let slope = least_squares_slope(&xs, &ys);
    let asymptote_gap = curve
        .complement_asymptotic
        .as_ref()
        .map(|a| idx.iter().map(|&i| (a[i] / curve.complement[i] - 1.0).abs()).fold(0.0, f64::max));
    let relative_error = (-slope / predicted - 1.0).abs();
    Ok(DiversityReport {
        label: curve.label.clone(),
        x_name: curve.x_name,
        fit_range: (curve.curve.grid[idx[0]], curve.curve.grid[*idx.last().expect("nonempty")]),
        points: idx.len(),
        slope,
        predicted,
        relative_error,
        asymptote_gap,
        pass: relative_error <= SLOPE_TOLERANCE,
    })
}

/// Ordinary least-squares slope of y on x.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
