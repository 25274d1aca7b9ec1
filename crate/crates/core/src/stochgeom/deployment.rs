use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{ensure, Result};

/// Densities and radii of the cluster-head / UAV deployment (SI units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeploymentParams {
    /// Candidate-point intensity λ_P (m⁻³).
    pub lambda_p: f64,
    /// Hard-core distance D_min (m).
    pub d_min: f64,
    /// Serving radius D (m).
    pub serving_radius: f64,
    /// Interference sensitivity radius D_max (m).
    pub d_max: f64,
    /// UAV intensity λ_U (m⁻³).
    pub lambda_u: f64,
}

/// Non-fatal deployment diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeploymentWarning {
    /// D_max < 5·D_min: the sensitivity shell is not much larger than the hard core.
    ShallowSensitivityShell,
}

impl DeploymentParams {
    /// Checks the invariants and returns any warnings.
    pub fn validate(&self) -> Result<Vec<DeploymentWarning>> {
        ensure(self.lambda_p >= 0.0 && self.lambda_p.is_finite(), "lambda_P must be nonnegative")?;
        ensure(self.lambda_u >= 0.0 && self.lambda_u.is_finite(), "lambda_U must be nonnegative")?;
        ensure(self.d_min > 0.0 && self.d_min.is_finite(), "D_min must be positive")?;
        ensure(self.serving_radius > 0.0, "serving radius D must be positive")?;
        ensure(2.0 * self.serving_radius <= self.d_min, "serving balls must not overlap (2D <= D_min)")?;
        ensure(
            self.d_max.is_finite() && self.d_max > self.d_min + 2.0 * self.serving_radius,
            "D_max must exceed D_min + 2D",
        )?;
        let mut w = Vec::new();
        if self.d_max < 5.0 * self.d_min {
            w.push(DeploymentWarning::ShallowSensitivityShell);
        }
        Ok(w)
    }

    /// λ_CH from the hard-core thinning relation.
    pub fn lambda_ch(&self) -> f64 {
        mhcpp_intensity(self.lambda_p, self.d_min)
    }

    /// V₁ = (4π/3)(D_max³ − D_min³).
    pub fn interference_volume(&self) -> f64 {
        4.0 * PI / 3.0
            * (self.d_max - self.d_min)
            * (self.d_max * self.d_max + self.d_max * self.d_min + self.d_min * self.d_min)
    }

    /// Mean interferer count λ_CH·V₁.
    pub fn mean_interferers(&self) -> f64 {
        self.lambda_ch() * self.interference_volume()
    }

    /// Mean UAV count in one serving ball, (4π/3)D³λ_U.
    pub fn mean_uavs(&self) -> f64 {
        4.0 * PI / 3.0 * libm::pow(self.serving_radius, 3.0) * self.lambda_u
    }
}

/// Intensity of the type-II hard-core process obtained from a Poisson process
/// of intensity `lambda_p` with hard-core distance `d_min`.
pub fn mhcpp_intensity(lambda_p: f64, d_min: f64) -> f64 {
    let ball = 4.0 * PI / 3.0 * d_min * d_min * d_min;
    if lambda_p <= 0.0 {
        return 0.0;
    }
    if lambda_p.is_infinite() {
        return 1.0 / ball;
    }
    -libm::expm1(-ball * lambda_p) / ball
}

/// Density of the CH–UAV distance, 3x²/D³ on [0, D].
pub fn pdf_dkj(x: f64, d: f64) -> f64 {
    if (0.0..=d).contains(&x) {
        3.0 * x * x / (d * d * d)
    } else {
        0.0
    }
}

/// Density of the squared interferer–UAV distance given the CH–UAV distance
/// `d_kj`, interferers uniform in the D_min–D_max shell around the serving CH.
pub fn pdf_dji1_given_dkj(x: f64, d_kj: f64, dep: &DeploymentParams) -> Result<f64> {
    ensure(d_kj > 0.0 && d_kj.is_finite(), "d_kj must be positive")?;
    let lo = (dep.d_min - d_kj).max(0.0);
    let hi = dep.d_max + d_kj;
    if !(x >= lo * lo && x <= hi * hi) {
        return Ok(0.0);
    }
    let r = libm::sqrt(x);
    let t4 = dep.d_max.min(r + d_kj);
    let t3 = dep.d_min.max(r - d_kj);
    Ok(PI * (t4 * t4 - t3 * t3).max(0.0) / (2.0 * d_kj * dep.interference_volume()))
}
