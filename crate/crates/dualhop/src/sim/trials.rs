use dualhop_core::channel::{fso_snr, FsoGainSampler, FsoLinkParams, NakagamiSampler, RfLinkParams};
use dualhop_core::coverage::RfCase;
use dualhop_core::stochgeom::{
    sample_count_hppp, sample_mhcpp, sample_uniform_ball, sample_uniform_shell, sample_uniform_shell_cone,
    DeploymentParams, EdgeMode, Point3, ShellCone,
};
use dualhop_core::Result;
use rand::distr::Distribution;
use rand::Rng;

use super::{FsoSampling, InterferenceGeometry, McConfig};
use crate::error::{AppError, AppResult};

/// Draws the satellite → CH SNR γ_k.
#[derive(Debug, Clone)]
pub struct FsoTrialModel {
    region: ShellCone,
    satellite: Point3,
    fso: FsoLinkParams,
    gain: FsoGainSampler,
    sampling: FsoSampling,
    lambda_p: f64,
    d_min: f64,
}

impl FsoTrialModel {
    /// Model for the geometry, link and CH placement of `cfg`.
    pub fn new(cfg: &McConfig) -> AppResult<Self> {
        let gain = FsoGainSampler::new(&cfg.fso).map_err(AppError::param("fso"))?;
        if cfg.fso_sampling == FsoSampling::FullThinning {
            cfg.deployment.validate().map_err(AppError::param("deployment"))?;
            if cfg.deployment.lambda_p * cfg.geometry.volume() < 1.0 {
                return Err(AppError::Config("full-thinning sampling needs λ_P·V ≥ 1".into()));
            }
        }
        Ok(Self {
            region: cfg.geometry.region(),
            satellite: cfg.geometry.satellite(),
            fso: cfg.fso,
            gain,
            sampling: cfg.fso_sampling,
            lambda_p: cfg.deployment.lambda_p,
            d_min: cfg.deployment.d_min,
        })
    }

    /// Serving CH position.
    pub fn draw_ch<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point3> {
        match self.sampling {
            FsoSampling::Uniform => Ok(sample_uniform_shell_cone(&self.region, rng)),
            FsoSampling::FullThinning => loop {
                let r = sample_mhcpp(&self.region, self.lambda_p, self.d_min, EdgeMode::Guarded, rng)?;
                let pts = &r.retained.positions;
                if !pts.is_empty() {
                    return Ok(pts[rng.random_range(0..pts.len())]);
                }
            },
        }
    }

    /// One SNR draw.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let ch = self.draw_ch(rng)?;
        let h = self.gain.sample(rng);
        fso_snr(h, ch.dist(self.satellite), &self.fso)
    }
}

/// One CH → UAV trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfTrial {
    /// CH–UAV distance (m).
    pub distance: f64,
    /// P_R g/(ρ d^α N_R).
    pub snr: f64,
    /// g d^{−α}/I with I = Σ g_i r_i^{−α}; infinite without interferers.
    pub sir: f64,
    /// g d^{−α}/(I + ρN_R/P_R).
    pub sinr: f64,
    /// Number of interferers drawn.
    pub interferers: u64,
}

impl RfTrial {
    /// The ratio the given case compares against the threshold.
    pub fn value(&self, case: RfCase) -> f64 {
        match case {
            RfCase::NoInterference => self.snr,
            RfCase::Sir => self.sir,
            RfCase::Sinr => self.sinr,
        }
    }
}

/// Draws the CH → UAV link: UAV uniform in the serving ball, Nakagami gains,
/// Poisson interferers with mean λ_CH·V₁.
#[derive(Debug, Clone)]
pub struct RfTrialModel {
    rf: RfLinkParams,
    dep: DeploymentParams,
    gain: NakagamiSampler,
    geometry: InterferenceGeometry,
    mean_interferers: f64,
    noise: f64,
}

impl RfTrialModel {
    /// Model for the link, deployment and interferer placement of `cfg`.
    pub fn new(cfg: &McConfig) -> AppResult<Self> {
        let gain = NakagamiSampler::new(&cfg.rf).map_err(AppError::param("rf"))?;
        cfg.deployment.validate().map_err(AppError::param("deployment"))?;
        Ok(Self {
            rf: cfg.rf,
            dep: cfg.deployment,
            gain,
            geometry: cfg.interference_geometry,
            mean_interferers: cfg.deployment.mean_interferers(),
            noise: cfg.rf.noise_ratio(),
        })
    }

    /// One trial; interferers are only drawn when `with_interference` is set.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R, with_interference: bool) -> Result<RfTrial> {
        let uav = sample_uniform_ball(Point3::default(), self.dep.serving_radius, rng)?;
        let d = uav.norm();
        let signal = self.gain.sample(rng) * d.powf(-self.rf.alpha_r);
        let (interference, interferers) = if with_interference { self.draw_interference(uav, rng)? } else { (0.0, 0) };
        Ok(RfTrial {
            distance: d,
            snr: signal / self.noise,
            sir: signal / interference,
            sinr: signal / (interference + self.noise),
            interferers,
        })
    }

    /// Aggregate interference Σ g_i r_i^{−α} at `uav` (CH at the origin) and
    /// the interferer count.
    pub fn draw_interference<R: Rng + ?Sized>(&self, uav: Point3, rng: &mut R) -> Result<(f64, u64)> {
        let n = sample_count_hppp(self.mean_interferers, rng)?;
        let half_alpha = 0.5 * self.rf.alpha_r;
        let mut total = 0.0;
        for _ in 0..n {
            let p = self.draw_interferer(uav, rng)?;
            total += self.gain.sample(rng) * p.dist_sq(uav).powf(-half_alpha);
        }
        Ok((total, n))
    }

    fn draw_interferer<R: Rng + ?Sized>(&self, uav: Point3, rng: &mut R) -> Result<Point3> {
        let (lo, hi) = (self.dep.d_min, self.dep.d_max);
        match self.geometry {
            InterferenceGeometry::Approximate => Ok(sample_uniform_shell(Point3::default(), lo, hi, rng)),
            // The D_min ball around the CH lies inside the D_max ball around
            // the UAV, so the region has volume V₁ and rejection rarely fires.
            InterferenceGeometry::Exact => loop {
                let p = sample_uniform_ball(uav, hi, rng)?;
                if p.norm_sq() >= lo * lo {
                    return Ok(p);
                }
            },
        }
    }
}

/// One dual-hop trial with independent hops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct E2eTrial {
    /// Satellite → CH SNR.
    pub hop1: f64,
    /// CH → UAV SNR, SIR or SINR.
    pub hop2: f64,
}

impl E2eTrial {
    /// Draws both hops.
    pub fn draw<R: Rng + ?Sized>(fso: &FsoTrialModel, rf: &RfTrialModel, case: RfCase, rng: &mut R) -> Result<Self> {
        let hop1 = fso.draw(rng)?;
        let hop2 = rf.draw(rng, case != RfCase::NoInterference)?.value(case);
        Ok(Self { hop1, hop2 })
    }

    /// Decode-and-forward equivalent SNR, min of the two hops.
    pub fn equivalent(&self) -> f64 {
        self.hop1.min(self.hop2)
    }
}
