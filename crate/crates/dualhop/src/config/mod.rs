//! JSON run configuration with unit-suffixed keys.
//!
//! A configuration is built by layering JSON objects: the defaults (or a named
//! preset), then a user file, then per-curve overrides. Every layer is checked
//! against the schema, so a misspelt key is an error rather than a silent
//! default.

mod presets;

use std::path::{Path, PathBuf};

use dualhop_core::channel::{FsoLinkParams, RfLinkParams};
use dualhop_core::defaults;
use dualhop_core::stochgeom::{DeploymentParams, SystemGeometry};
use dualhop_core::units::{db_to_linear, dbm_to_watts, km, per_km3};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{AppError, AppResult};
use crate::sim::{FsoSampling, InterferenceGeometry, McConfig, Scenario};

pub use presets::{preset, PRESETS};

/// Satellite geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    /// Earth radius R.
    #[serde(rename = "R_km")]
    pub r_km: f64,
    /// Shell thickness H_U.
    #[serde(rename = "H_U_km")]
    pub h_u_km: f64,
    /// Satellite altitude H_S.
    #[serde(rename = "H_S_km")]
    pub h_s_km: f64,
    /// Cone half-angle ξ₀.
    pub xi0_rad: f64,
}

/// Satellite → CH optical link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FsoConfig {
    /// Large-scale turbulence shape α.
    pub alpha: f64,
    /// Small-scale turbulence shape β.
    pub beta: f64,
    /// Pointing-error ratio ω.
    pub omega: f64,
    /// Maximal collected-power fraction A0.
    #[serde(rename = "A0")]
    pub a0: f64,
    /// Atmospheric loss h_l.
    #[serde(rename = "h_l_dB")]
    pub h_l_db: f64,
    /// Photoelectric conversion ratio η.
    pub eta: f64,
    /// Optical wavelength.
    pub wavelength_nm: f64,
    /// Transmit aperture gain.
    #[serde(rename = "G_S_dB")]
    pub g_s_db: f64,
    /// Receive aperture gain.
    #[serde(rename = "G_R_dB")]
    pub g_r_db: f64,
    /// Satellite transmit power.
    #[serde(rename = "P_S_dBm")]
    pub p_s_dbm: f64,
    /// CH receiver noise power.
    #[serde(rename = "N_F_dBm")]
    pub n_f_dbm: f64,
}

/// CH → UAV RF link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RfConfig {
    /// Nakagami m (integer).
    pub m: f64,
    /// Mean channel power Ω.
    #[serde(rename = "Omega")]
    pub omega: f64,
    /// Path loss at 1 m.
    pub rho: f64,
    /// Path-loss exponent.
    pub alpha_r: f64,
    /// CH transmit power.
    #[serde(rename = "P_R_dBm")]
    pub p_r_dbm: f64,
    /// UAV receiver noise power.
    #[serde(rename = "N_R_dBm")]
    pub n_r_dbm: f64,
}

/// CH and UAV deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeploymentConfig {
    /// Candidate intensity λ_P.
    #[serde(rename = "lambda_P_per_km3")]
    pub lambda_p_per_km3: f64,
    /// Hard-core distance.
    #[serde(rename = "D_min_km")]
    pub d_min_km: f64,
    /// Serving radius.
    #[serde(rename = "D_km")]
    pub d_km: f64,
    /// Interference sensitivity radius.
    #[serde(rename = "D_max_km")]
    pub d_max_km: f64,
    /// UAV intensity λ_U.
    #[serde(rename = "lambda_U_per_km3")]
    pub lambda_u_per_km3: f64,
}

/// Inclusive start/stop/step grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    /// First value.
    pub start: f64,
    /// Last value (included when it falls on the grid).
    pub stop: f64,
    /// Positive spacing.
    pub step: f64,
}

impl GridSpec {
    /// Grid values.
    pub fn values(&self) -> AppResult<Vec<f64>> {
        let ok = self.start.is_finite() && self.stop.is_finite() && self.step > 0.0 && self.stop >= self.start;
        if !ok {
            return Err(AppError::Config(format!(
                "grid needs finite start <= stop and step > 0 (got {} to {} by {})",
                self.start, self.stop, self.step
            )));
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        if n > 100_000 {
            return Err(AppError::Config(format!("grid has {n} points, more than 100000")));
        }
        Ok((0..n).map(|i| self.start + i as f64 * self.step).collect())
    }
}

/// Quantity swept on the x axis in place of the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    /// Satellite transmit power.
    #[serde(rename = "P_S_dBm")]
    PsDbm,
    /// CH transmit SNR P_R/N_R (P_R is varied, N_R kept).
    #[serde(rename = "P_R_over_N_R_dB")]
    PrOverNrDb,
}

impl SweepVariable {
    /// Column name.
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::PsDbm => "P_S_dBm",
            SweepVariable::PrOverNrDb => "P_R_over_N_R_dB",
        }
    }
}

/// Sweep of a transmit-power variable at a fixed threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    /// Swept quantity.
    pub variable: SweepVariable,
    /// First value.
    pub start: f64,
    /// Last value.
    pub stop: f64,
    /// Spacing.
    pub step: f64,
    /// Threshold held fixed during the sweep.
    #[serde(rename = "gamma_th_dB")]
    pub gamma_th_db: f64,
}

/// One curve of a multi-curve run: dotted-path overrides of the base config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    /// Label used in file names and legends.
    pub label: String,
    /// Overrides such as `{"fso.alpha": 4.76}`.
    #[serde(default)]
    pub set: Map<String, Value>,
}

/// Settings of the point-process check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PointProcessConfig {
    /// Hard-core distances to test.
    #[serde(rename = "D_min_km")]
    pub d_min_km: Vec<f64>,
    /// Minimum pooled points per KS curve.
    pub min_points: u64,
}

/// Settings of the Laplace-transform check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LtConfig {
    /// Transform variables.
    pub s: Vec<f64>,
    /// CH–UAV distances as fractions of D.
    #[serde(rename = "d_over_D")]
    pub d_over_d: Vec<f64>,
}

/// Everything a command needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Scenario name, see [`Scenario::from_name`].
    pub scenario: String,
    /// Satellite geometry.
    pub geometry: GeometryConfig,
    /// FSO link.
    pub fso: FsoConfig,
    /// RF link.
    pub rf: RfConfig,
    /// Deployment.
    pub deployment: DeploymentConfig,
    /// Threshold grid in dB.
    #[serde(rename = "thresholds_dB")]
    pub thresholds_db: GridSpec,
    /// Optional transmit-power sweep replacing the threshold axis.
    pub sweep: Option<SweepSpec>,
    /// Curves drawn from this base; empty means one curve named after the scenario.
    pub curves: Vec<CurveSpec>,
    /// Chebyshev–Gauss order for the satellite-link distance.
    #[serde(rename = "M_f")]
    pub m_f: usize,
    /// Chebyshev–Gauss order for the CH–UAV distance.
    #[serde(rename = "M_r")]
    pub m_r: usize,
    /// Monte-Carlo trials.
    pub trials: u64,
    /// Base seed.
    pub seed: u64,
    /// Output directory.
    pub out_dir: PathBuf,
    /// Interferer placement in simulations.
    pub interference_geometry: InterferenceGeometry,
    /// CH placement in FSO simulations.
    pub fso_sampling: FsoSampling,
    /// Point-process check settings.
    pub pointprocess: PointProcessConfig,
    /// Laplace-transform check settings.
    pub lt: LtConfig,
    /// Also write SVG plots.
    pub svg: bool,
}

/// Model parameters in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    /// Satellite geometry.
    pub geometry: SystemGeometry,
    /// FSO link.
    pub fso: FsoLinkParams,
    /// RF link.
    pub rf: RfLinkParams,
    /// Deployment.
    pub deployment: DeploymentParams,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { variable: SweepVariable::PsDbm, start: 20.0, stop: 60.0, step: 2.0, gamma_th_db: 30.0 }
    }
}

impl SweepSpec {
    /// Values of the swept quantity.
    pub fn values(&self) -> AppResult<Vec<f64>> {
        GridSpec { start: self.start, stop: self.stop, step: self.step }.values()
    }
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let g = defaults::geometry();
        GeometryConfig {
            r_km: g.earth_radius() / 1e3,
            h_u_km: g.shell_thickness() / 1e3,
            h_s_km: g.satellite_height() / 1e3,
            xi0_rad: g.cone_half_angle(),
        }
    }
}

impl Default for FsoConfig {
    fn default() -> Self {
        let f = defaults::fso();
        FsoConfig {
            alpha: f.alpha,
            beta: f.beta,
            omega: f.omega,
            a0: f.a0,
            h_l_db: -0.35,
            eta: f.eta,
            wavelength_nm: 1550.0,
            g_s_db: 107.85,
            g_r_db: 107.85,
            p_s_dbm: 40.0,
            n_f_dbm: -100.0,
        }
    }
}

impl Default for RfConfig {
    fn default() -> Self {
        let r = defaults::rf();
        RfConfig { m: r.m, omega: r.omega, rho: r.rho, alpha_r: r.alpha_r, p_r_dbm: 30.0, n_r_dbm: -100.0 }
    }
}

impl Default for DeploymentConfig {
    fn default() -> Self {
        let d = defaults::deployment();
        DeploymentConfig {
            lambda_p_per_km3: 0.001,
            d_min_km: d.d_min / 1e3,
            d_km: d.serving_radius / 1e3,
            d_max_km: d.d_max / 1e3,
            lambda_u_per_km3: 1.0,
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { start: 0.0, stop: 40.0, step: 1.0 }
    }
}

impl Default for PointProcessConfig {
    fn default() -> Self {
        PointProcessConfig { d_min_km: vec![0.1, 1.0, 2.0, 10.0], min_points: 10_000 }
    }
}

impl Default for LtConfig {
    fn default() -> Self {
        LtConfig { s: vec![1e6, 3e6, 1e7], d_over_d: vec![0.25, 0.5, 1.0] }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::FsoSch.name().into(),
            geometry: GeometryConfig::default(),
            fso: FsoConfig::default(),
            rf: RfConfig::default(),
            deployment: DeploymentConfig::default(),
            thresholds_db: GridSpec::default(),
            sweep: None,
            curves: Vec::new(),
            m_f: defaults::M_F,
            m_r: defaults::M_R,
            trials: 100_000,
            seed: 1,
            out_dir: PathBuf::from("out"),
            interference_geometry: InterferenceGeometry::Approximate,
            fso_sampling: FsoSampling::Uniform,
            pointprocess: PointProcessConfig::default(),
            lt: LtConfig::default(),
            svg: false,
        }
    }
}

impl RunConfig {
    /// Parses a complete or partial JSON document layered over `base`.
    pub fn from_json_over(base: &RunConfig, text: &str) -> AppResult<RunConfig> {
        // Schema check on the text itself, so diagnostics carry line and column.
        serde_json::from_str::<RunConfig>(text).map_err(|e| AppError::Config(e.to_string()))?;
        let user: Value = serde_json::from_str(text).map_err(|e| AppError::Config(e.to_string()))?;
        let mut merged = base.to_value();
        merge(&mut merged, user);
        let cfg: RunConfig = serde_json::from_value(merged).map_err(|e| AppError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Reads a config file layered over `base`.
    pub fn load(base: &RunConfig, path: &Path) -> AppResult<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(AppError::io(path))?;
        Self::from_json_over(base, &text).map_err(|e| match e {
            AppError::Config(msg) => AppError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// JSON tree of this config.
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// Pretty JSON text of this config.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Parsed scenario.
    pub fn scenario(&self) -> AppResult<Scenario> {
        Scenario::from_name(&self.scenario)
            .ok_or_else(|| AppError::Config(format!("unknown scenario `{}`", self.scenario)))
    }

    /// Threshold grid in dB.
    pub fn thresholds(&self) -> AppResult<Vec<f64>> {
        self.thresholds_db.values()
    }

    /// SI parameters, validated.
    pub fn params(&self) -> AppResult<Params> {
        let g = &self.geometry;
        let geometry = SystemGeometry::new(km(g.r_km), km(g.h_u_km), km(g.h_s_km), g.xi0_rad)
            .map_err(AppError::param("geometry"))?;
        let f = &self.fso;
        let fso = FsoLinkParams {
            alpha: f.alpha,
            beta: f.beta,
            omega: f.omega,
            a0: f.a0,
            h_l: db_to_linear(f.h_l_db),
            eta: f.eta,
            wavelength: f.wavelength_nm * 1e-9,
            g_s: db_to_linear(f.g_s_db),
            g_r: db_to_linear(f.g_r_db),
            p_s: dbm_to_watts(f.p_s_dbm),
            n_f: dbm_to_watts(f.n_f_dbm),
        };
        fso.validate().map_err(AppError::param("fso"))?;
        let r = &self.rf;
        let rf = RfLinkParams {
            m: r.m,
            omega: r.omega,
            rho: r.rho,
            alpha_r: r.alpha_r,
            p_r: dbm_to_watts(r.p_r_dbm),
            n_r: dbm_to_watts(r.n_r_dbm),
        };
        rf.validate().map_err(AppError::param("rf"))?;
        let d = &self.deployment;
        let deployment = DeploymentParams {
            lambda_p: per_km3(d.lambda_p_per_km3),
            d_min: km(d.d_min_km),
            serving_radius: km(d.d_km),
            d_max: km(d.d_max_km),
            lambda_u: per_km3(d.lambda_u_per_km3),
        };
        deployment.validate().map_err(AppError::param("deployment"))?;
        Ok(Params { geometry, fso, rf, deployment })
    }

    /// The configs of every curve, each with its label.
    pub fn curve_configs(&self) -> AppResult<Vec<(String, RunConfig)>> {
        if self.curves.is_empty() {
            let mut only = self.clone();
            only.curves.clear();
            return Ok(vec![(self.scenario.clone(), only)]);
        }
        let mut base = self.to_value();
        base.as_object_mut().expect("object").insert("curves".into(), Value::Array(Vec::new()));
        self.curves
            .iter()
            .map(|c| {
                let mut v = base.clone();
                for (path, val) in &c.set {
                    set_path(&mut v, path, val.clone())
                        .map_err(|e| AppError::Config(format!("curve `{}`: {e}", c.label)))?;
                }
                let cfg: RunConfig =
                    serde_json::from_value(v).map_err(|e| AppError::Config(format!("curve `{}`: {e}", c.label)))?;
                cfg.check().map_err(|e| AppError::Config(format!("curve `{}`: {e}", c.label)))?;
                Ok((c.label.clone(), cfg))
            })
            .collect()
    }

    /// Monte-Carlo settings for this config.
    pub fn mc_config(&self) -> AppResult<McConfig> {
        let p = self.params()?;
        Ok(McConfig {
            trials: self.trials,
            seed: self.seed,
            scenario: self.scenario()?,
            geometry: p.geometry,
            fso: p.fso,
            rf: p.rf,
            deployment: p.deployment,
            thresholds_db: self.thresholds()?,
            interference_geometry: self.interference_geometry,
            fso_sampling: self.fso_sampling,
        })
    }

    /// Copy with the swept variable set to `x`.
    pub fn at_sweep_value(&self, variable: SweepVariable, x: f64) -> RunConfig {
        let mut c = self.clone();
        match variable {
            SweepVariable::PsDbm => c.fso.p_s_dbm = x,
            SweepVariable::PrOverNrDb => c.rf.p_r_dbm = c.rf.n_r_dbm + x,
        }
        c
    }

    /// Current transmit SNR P_R/N_R in dB.
    pub fn p_r_over_n_r_db(&self) -> f64 {
        self.rf.p_r_dbm - self.rf.n_r_dbm
    }

    fn check(&self) -> AppResult<()> {
        self.scenario()?;
        self.thresholds()?;
        if let Some(s) = &self.sweep {
            s.values()?;
        }
        if self.m_f == 0 || self.m_r == 0 {
            return Err(AppError::Config("M_f and M_r must be positive".into()));
        }
        if self.trials == 0 {
            return Err(AppError::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Recursive object merge; non-object values in `over` replace those in `base`.
pub(crate) fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, o) => *b = o,
    }
}

fn set_path(root: &mut Value, path: &str, val: Value) -> Result<(), String> {
    let mut cur = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, k) in keys.iter().enumerate() {
        let obj = cur.as_object_mut().ok_or_else(|| format!("`{path}` does not name a config key"))?;
        if !obj.contains_key(*k) {
            return Err(format!("unknown key `{path}`"));
        }
        if i + 1 == keys.len() {
            obj.insert((*k).to_string(), val);
            return Ok(());
        }
        cur = obj.get_mut(*k).expect("checked");
    }
    Err(format!("empty override path `{path}`"))
}
