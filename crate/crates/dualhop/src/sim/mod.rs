//! Monte-Carlo harness: seeded trial generation and empirical coverage with
//! Wilson intervals.
//!
//! Every trial draws from its own ChaCha8 stream keyed by the trial index, so
//! reports do not depend on how trials are scheduled across threads. All
//! thresholds are evaluated against the same trials.

mod laplace;
mod pointprocess;
mod trials;

use std::time::Instant;

use dualhop_core::channel::{FsoLinkParams, RfLinkParams};
use dualhop_core::coverage::RfCase;
use dualhop_core::stochgeom::{DeploymentParams, SystemGeometry};
use dualhop_core::units::db_to_linear;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

pub use laplace::{run_lt_check, LtReport, LtRow};
pub use pointprocess::{ks_distance, run_pointprocess_check, CdfPoint, PointProcessReport, ProcessSummary};
pub use trials::{E2eTrial, FsoTrialModel, RfTrial, RfTrialModel};

/// What a Monte-Carlo run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Satellite → CH SNR.
    FsoSch,
    /// CH → UAV SNR without interference.
    RfNoInterference,
    /// CH → UAV SIR.
    RfSir,
    /// CH → UAV SINR.
    RfSinr,
    /// Dual-hop decode-and-forward outage with the given second-hop model.
    E2e(#[serde(with = "rf_case_name")] RfCase),
    /// HPPP/MHCPP distance-law and retention check.
    PointProcessCheck,
    /// Empirical Laplace transform of the interference.
    LtCheck,
}

impl Scenario {
    /// Short name used in file names and reports.
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::FsoSch => "fso_sch",
            Scenario::RfNoInterference => "rf_nointerference",
            Scenario::RfSir => "rf_sir",
            Scenario::RfSinr => "rf_sinr",
            Scenario::E2e(RfCase::NoInterference) => "e2e_nointerference",
            Scenario::E2e(RfCase::Sir) => "e2e_sir",
            Scenario::E2e(RfCase::Sinr) => "e2e_sinr",
            Scenario::PointProcessCheck => "pointprocess_check",
            Scenario::LtCheck => "lt_check",
        }
    }

    /// Inverse of [`Scenario::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "fso_sch" => Scenario::FsoSch,
            "rf_nointerference" => Scenario::RfNoInterference,
            "rf_sir" => Scenario::RfSir,
            "rf_sinr" => Scenario::RfSinr,
            "e2e_nointerference" => Scenario::E2e(RfCase::NoInterference),
            "e2e_sir" => Scenario::E2e(RfCase::Sir),
            "e2e_sinr" => Scenario::E2e(RfCase::Sinr),
            "pointprocess_check" => Scenario::PointProcessCheck,
            "lt_check" => Scenario::LtCheck,
            _ => return None,
        })
    }

    /// Whether the reported probability is a coverage or an outage.
    pub fn metric(&self) -> Metric {
        match self {
            Scenario::E2e(_) => Metric::Outage,
            _ => Metric::Coverage,
        }
    }
}

mod rf_case_name {
    use dualhop_core::coverage::RfCase;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(case: &RfCase, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match case {
            RfCase::NoInterference => "nointerference",
            RfCase::Sir => "sir",
            RfCase::Sinr => "sinr",
        })
    }
}

/// Probability reported per threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// P(γ > γ_th).
    Coverage,
    /// P(γ ≤ γ_th).
    Outage,
}

/// Where interfering CHs are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterferenceGeometry {
    /// Uniform in the D_min–D_max shell around the serving CH, which is the
    /// law the analytic expressions assume.
    #[default]
    Approximate,
    /// Uniform in the D_max ball around the UAV minus the D_min ball around
    /// the serving CH.
    Exact,
}

/// How the serving CH is placed in FSO trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FsoSampling {
    /// Uniform in the spherical-cone shell.
    #[default]
    Uniform,
    /// A retained point picked uniformly from a full HPPP + MHCPP realization.
    FullThinning,
}

/// Parameters of a Monte-Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    /// Number of trials (realizations for the point-process check).
    pub trials: u64,
    /// Base seed.
    pub seed: u64,
    /// What to measure.
    pub scenario: Scenario,
    /// Satellite geometry.
    pub geometry: SystemGeometry,
    /// FSO link.
    pub fso: FsoLinkParams,
    /// RF link.
    pub rf: RfLinkParams,
    /// CH/UAV deployment.
    pub deployment: DeploymentParams,
    /// Thresholds in dB, strictly increasing.
    pub thresholds_db: Vec<f64>,
    /// Interferer placement for RF and e2e runs.
    pub interference_geometry: InterferenceGeometry,
    /// CH placement for FSO and e2e runs.
    pub fso_sampling: FsoSampling,
}

impl McConfig {
    /// Checks the run invariants and the parameter bundles the scenario uses.
    pub fn validate(&self) -> AppResult<()> {
        if self.trials == 0 {
            return Err(AppError::Config("trials must be at least 1".into()));
        }
        if matches!(self.scenario, Scenario::PointProcessCheck | Scenario::LtCheck) {
            return Ok(());
        }
        if self.thresholds_db.is_empty() {
            return Err(AppError::Config("threshold grid is empty".into()));
        }
        if self.thresholds_db.iter().any(|t| !t.is_finite()) || self.thresholds_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(AppError::Config("thresholds must be finite and strictly increasing".into()));
        }
        let uses_fso = matches!(self.scenario, Scenario::FsoSch | Scenario::E2e(_));
        let uses_rf = !matches!(self.scenario, Scenario::FsoSch);
        if uses_fso {
            self.fso.validate().map_err(AppError::param("fso"))?;
        }
        if uses_rf {
            self.rf.validate().map_err(AppError::param("rf"))?;
            self.deployment.validate().map_err(AppError::param("deployment"))?;
        }
        Ok(())
    }

    fn thresholds_linear(&self) -> Vec<f64> {
        self.thresholds_db.iter().map(|t| db_to_linear(*t)).collect()
    }
}

/// Point estimate and Wilson 95% interval for a binomial proportion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    /// Number of successes.
    pub successes: u64,
    /// Number of trials.
    pub trials: u64,
    /// successes / trials.
    pub p: f64,
    /// Lower interval bound.
    pub lo: f64,
    /// Upper interval bound.
    pub hi: f64,
}

impl Estimate {
    /// Binomial standard error √(p(1−p)/n) at the point estimate.
    pub fn sigma(&self) -> f64 {
        (self.p * (1.0 - self.p) / self.trials as f64).sqrt()
    }
}

const Z95: f64 = 1.959_963_984_540_054;

/// Proportion estimate with a Wilson score interval.
pub fn estimate_cp(successes: u64, trials: u64) -> AppResult<Estimate> {
    if trials == 0 || successes > trials {
        return Err(AppError::Domain(format!("invalid counts {successes}/{trials}")));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (centre - half).clamp(0.0, p) };
    let hi = if successes == trials { 1.0 } else { (centre + half).clamp(p, 1.0) };
    Ok(Estimate { successes, trials, p, lo, hi })
}

/// One threshold of a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    /// Threshold in dB.
    pub threshold_db: f64,
    /// Empirical probability of the report's metric.
    pub estimate: Estimate,
}

/// A named per-threshold series measured on the same trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    /// Series name.
    pub name: String,
    /// One estimate per threshold.
    pub estimates: Vec<Estimate>,
}

/// Result of a threshold-grid Monte-Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    /// Measured scenario.
    pub scenario: Scenario,
    /// Coverage or outage.
    pub metric: Metric,
    /// Base seed.
    pub seed: u64,
    /// Trials run.
    pub trials: u64,
    /// Interferer placement used.
    pub interference_geometry: InterferenceGeometry,
    /// CH placement used.
    pub fso_sampling: FsoSampling,
    /// Main estimates.
    pub rows: Vec<ThresholdEstimate>,
    /// Companion series from the same trials (per-hop coverage, SNR-only
    /// coverage, trials without interferers).
    pub auxiliary: Vec<Series>,
    /// Elapsed time in seconds.
    pub wall_time_s: f64,
}

impl McReport {
    /// Estimates of the main metric.
    pub fn estimates(&self) -> impl Iterator<Item = &Estimate> {
        self.rows.iter().map(|r| &r.estimate)
    }

    /// Auxiliary series by name.
    pub fn series(&self, name: &str) -> Option<&[Estimate]> {
        self.auxiliary.iter().find(|s| s.name == name).map(|s| s.estimates.as_slice())
    }
}

/// Fresh generator for one trial.
pub(crate) fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Counts of values above each threshold; `hist[i]` holds how many values
/// exceed exactly the first `i` thresholds.
#[derive(Debug, Clone)]
struct Counter {
    hist: Vec<u64>,
}

impl Counter {
    fn new(k: usize) -> Self {
        Self { hist: vec![0; k + 1] }
    }

    fn add(&mut self, thresholds: &[f64], value: f64) {
        self.hist[thresholds.partition_point(|t| *t < value)] += 1;
    }

    fn merge(&mut self, other: &Counter) {
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
    }

    fn total(&self) -> u64 {
        self.hist.iter().sum()
    }

    /// Number of values above threshold j, for every j.
    fn above(&self) -> Vec<u64> {
        let k = self.hist.len() - 1;
        let mut out = vec![0; k];
        let mut acc = 0;
        for j in (0..k).rev() {
            acc += self.hist[j + 1];
            out[j] = acc;
        }
        out
    }

    fn estimates(&self, metric: Metric) -> AppResult<Vec<Estimate>> {
        let n = self.total();
        if n == 0 {
            return Ok(Vec::new());
        }
        self.above().into_iter().map(|a| estimate_cp(if metric == Metric::Coverage { a } else { n - a }, n)).collect()
    }
}

/// Runs `trial` for every index in parallel and folds each trial's values into
/// one counter per slot. A NaN value skips the slot for that trial.
fn count_trials<const K: usize>(
    cfg: &McConfig,
    thresholds: &[f64],
    trial: impl Fn(&mut ChaCha8Rng) -> dualhop_core::Result<[f64; K]> + Sync,
) -> AppResult<[Counter; K]> {
    let fresh = || core::array::from_fn::<Counter, K, _>(|_| Counter::new(thresholds.len()));
    (0..cfg.trials)
        .into_par_iter()
        .try_fold(fresh, |mut acc, i| {
            let mut rng = trial_rng(cfg.seed, i);
            let values = trial(&mut rng)?;
            for (c, v) in acc.iter_mut().zip(values) {
                if !v.is_nan() {
                    c.add(thresholds, v);
                }
            }
            Ok::<_, dualhop_core::Error>(acc)
        })
        .try_reduce(fresh, |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                x.merge(y);
            }
            Ok(a)
        })
        .map_err(AppError::from)
}

fn report(cfg: &McConfig, start: Instant, main: &Counter, aux: Vec<(&str, &Counter, Metric)>) -> AppResult<McReport> {
    let metric = cfg.scenario.metric();
    let rows = cfg
        .thresholds_db
        .iter()
        .zip(main.estimates(metric)?)
        .map(|(t, estimate)| ThresholdEstimate { threshold_db: *t, estimate })
        .collect();
    let auxiliary = aux
        .into_iter()
        .map(|(name, c, m)| Ok(Series { name: name.to_string(), estimates: c.estimates(m)? }))
        .collect::<AppResult<_>>()?;
    Ok(McReport {
        scenario: cfg.scenario,
        metric,
        seed: cfg.seed,
        trials: cfg.trials,
        interference_geometry: cfg.interference_geometry,
        fso_sampling: cfg.fso_sampling,
        rows,
        auxiliary,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Empirical coverage of the satellite → CH link.
pub fn run_fso_trials(cfg: &McConfig) -> AppResult<McReport> {
    cfg.validate()?;
    if cfg.scenario != Scenario::FsoSch {
        return Err(wrong_scenario(cfg));
    }
    let start = Instant::now();
    let model = FsoTrialModel::new(cfg)?;
    let th = cfg.thresholds_linear();
    let [snr] = count_trials(cfg, &th, |rng| Ok([model.draw(rng)?]))?;
    report(cfg, start, &snr, Vec::new())
}

/// Empirical coverage of the CH → UAV link. Auxiliary series: `snr` (the same
/// draws without interference) and `no_interferers` (the scenario metric
/// restricted to trials that drew no interferer).
pub fn run_rf_trials(cfg: &McConfig) -> AppResult<McReport> {
    cfg.validate()?;
    let case = match cfg.scenario {
        Scenario::RfNoInterference => RfCase::NoInterference,
        Scenario::RfSir => RfCase::Sir,
        Scenario::RfSinr => RfCase::Sinr,
        _ => return Err(wrong_scenario(cfg)),
    };
    let start = Instant::now();
    let model = RfTrialModel::new(cfg)?;
    let th = cfg.thresholds_linear();
    let [main, snr, quiet] = count_trials(cfg, &th, |rng| {
        let t = model.draw(rng, case != RfCase::NoInterference)?;
        let v = t.value(case);
        Ok([v, t.snr, if t.interferers == 0 { v } else { f64::NAN }])
    })?;
    report(cfg, start, &main, vec![("snr", &snr, Metric::Coverage), ("no_interferers", &quiet, Metric::Coverage)])
}

/// Empirical dual-hop outage with independent hops and γ_eq = min of the two.
/// Auxiliary series: `hop1_cp` and `hop2_cp`.
pub fn run_e2e_trials(cfg: &McConfig) -> AppResult<McReport> {
    cfg.validate()?;
    let Scenario::E2e(case) = cfg.scenario else {
        return Err(wrong_scenario(cfg));
    };
    let start = Instant::now();
    let fso = FsoTrialModel::new(cfg)?;
    let rf = RfTrialModel::new(cfg)?;
    let th = cfg.thresholds_linear();
    let [eq, hop1, hop2] = count_trials(cfg, &th, |rng| {
        let t = E2eTrial::draw(&fso, &rf, case, rng)?;
        Ok([t.equivalent(), t.hop1, t.hop2])
    })?;
    report(cfg, start, &eq, vec![("hop1_cp", &hop1, Metric::Coverage), ("hop2_cp", &hop2, Metric::Coverage)])
}

/// Dispatches a threshold-grid scenario.
pub fn run(cfg: &McConfig) -> AppResult<McReport> {
    match cfg.scenario {
        Scenario::FsoSch => run_fso_trials(cfg),
        Scenario::RfNoInterference | Scenario::RfSir | Scenario::RfSinr => run_rf_trials(cfg),
        Scenario::E2e(_) => run_e2e_trials(cfg),
        Scenario::PointProcessCheck | Scenario::LtCheck => {
            Err(AppError::Config(format!("scenario {} does not produce a threshold report", cfg.scenario.name())))
        }
    }
}

fn wrong_scenario(cfg: &McConfig) -> AppError {
    AppError::Config(format!("scenario {} is not handled by this runner", cfg.scenario.name()))
}
