use alloc::vec::Vec;

use super::curve::Evaluated;
use super::interference::{DerivativeRoute, InterferenceField};
use crate::channel::RfLinkParams;
use crate::error::{ensure, Error, Result};
use crate::specfun::{cheb_gauss_nodes, ln_gamma, lower_incomplete_gamma, regularized_lower_gamma, KahanSum};
use crate::stochgeom::DeploymentParams;

/// Largest Nakagami m accepted by the interference-limited expressions.
pub const M_MAX: u32 = 8;

const MAX_CANCELLATION: f64 = 1e12;

/// F_{γ_kj}(x) without interference for a UAV uniform in the ball of radius `d`.
///
/// Evaluated as P(m, K) − K^{−3/α}·γ(m + 3/α, K)/Γ(m) with K = mρN_R d^α x/(ΩP_R),
/// which stays accurate when the outage is tiny.
pub fn cdf_rf_nointerference(x: f64, rf: &RfLinkParams, d: f64) -> Result<f64> {
    let m = f64::from(rf.m_int()?);
    rf.validate()?;
    ensure(x >= 0.0, "threshold must be nonnegative")?;
    ensure(d > 0.0 && d.is_finite(), "serving radius must be positive")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let a = 3.0 / rf.alpha_r;
    let k = m * rf.noise_ratio() * libm::pow(d, rf.alpha_r) * x / rf.omega;
    let first = regularized_lower_gamma(m, k)?;
    let second = libm::exp(-a * libm::log(k) - ln_gamma(m)?) * lower_incomplete_gamma(m + a, k)?;
    Ok((first - second).clamp(0.0, 1.0))
}

/// Interference-free coverage probability, 1 − [`cdf_rf_nointerference`].
pub fn cp_rf_nointerference(gamma_th: f64, rf: &RfLinkParams, d: f64) -> Result<f64> {
    Ok(1.0 - cdf_rf_nointerference(gamma_th, rf, d)?)
}

/// High-SNR form 1 − (3m^{m−1}/(m−1)!)(ρN_Rγ/(ΩP_R))^m D^{αm}/(αm + 3).
pub fn cp_rf_nointerference_asymptotic(gamma_th: f64, rf: &RfLinkParams, d: f64) -> Result<Evaluated> {
    Ok(Evaluated::new(1.0 - outage_rf_nointerference_asymptotic(gamma_th, rf, d)?))
}

/// The outage term of [`cp_rf_nointerference_asymptotic`].
pub fn outage_rf_nointerference_asymptotic(gamma_th: f64, rf: &RfLinkParams, d: f64) -> Result<f64> {
    let m = f64::from(rf.m_int()?);
    rf.validate()?;
    ensure(gamma_th >= 0.0 && d > 0.0, "threshold and radius must be valid")?;
    let base = rf.noise_ratio() * gamma_th / rf.omega * libm::pow(d, rf.alpha_r);
    let ln = libm::log(3.0) + (m - 1.0) * libm::log(m) - ln_gamma(m)? + m * libm::log(base)
        - libm::log(rf.alpha_r * m + 3.0);
    Ok(libm::exp(ln))
}

/// Diversity order of the interference-free CH→UAV link, m.
pub fn diversity_order_rf(rf: &RfLinkParams) -> f64 {
    rf.m
}

/// Coverage of the CH→UAV link under interference, averaged over the UAV
/// position with an `order`-node Chebyshev–Gauss rule.
#[derive(Debug, Clone)]
pub struct RfCoverage {
    rf: RfLinkParams,
    dep: DeploymentParams,
    m: u32,
    /// (b_p, weight_p) with the 3/(2D²)·π/M·√(1−t²)·b_p² factor folded in.
    nodes: Vec<(f64, f64)>,
    route: DerivativeRoute,
}

impl RfCoverage {
    /// Validated model.
    pub fn new(rf: &RfLinkParams, dep: &DeploymentParams, order: usize) -> Result<Self> {
        rf.validate()?;
        dep.validate()?;
        let m = rf.m_int()?;
        if m > M_MAX {
            return Err(Error::Domain("Nakagami m above the supported maximum of 8"));
        }
        ensure(order >= 1, "quadrature order must be positive")?;
        let d = dep.serving_radius;
        let rule = cheb_gauss_nodes(order);
        let nodes = rule
            .nodes()
            .iter()
            .map(|&t| {
                let b = 0.5 * d * (t + 1.0);
                (b, 1.5 / (d * d) * rule.weight() * libm::sqrt(1.0 - t * t) * b * b)
            })
            .collect();
        Ok(Self { rf: *rf, dep: *dep, m, nodes, route: DerivativeRoute::Direct })
    }

    /// Switches the derivative evaluation route.
    pub fn with_route(mut self, route: DerivativeRoute) -> Self {
        self.route = route;
        self
    }

    /// Number of quadrature nodes.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Link parameters.
    pub fn rf(&self) -> &RfLinkParams {
        &self.rf
    }

    /// Deployment parameters.
    pub fn deployment(&self) -> &DeploymentParams {
        &self.dep
    }

    /// Interference-free coverage at the serving radius of this model.
    pub fn cp_nointerference(&self, gamma_th: f64) -> Result<f64> {
        cp_rf_nointerference(gamma_th, &self.rf, self.dep.serving_radius)
    }

    /// Interference-limited coverage P(SIR > γ_th).
    pub fn cp_sir(&self, gamma_th: f64) -> Result<Evaluated> {
        self.evaluate(gamma_th, 0.0)
    }

    /// Coverage with interference and noise, P(SINR > γ_th).
    pub fn cp_sinr(&self, gamma_th: f64) -> Result<Evaluated> {
        self.evaluate(gamma_th, self.rf.noise_ratio())
    }

    /// Σ_p w_p Σ_{j<m} s^j/j!·E[(N+I)^j e^{−s(N+I)}] with s = mγ b_p^α/Ω.
    fn evaluate(&self, gamma_th: f64, noise: f64) -> Result<Evaluated> {
        ensure(gamma_th > 0.0 && gamma_th.is_finite(), "threshold must be positive")?;
        let m = self.m as usize;
        let mf = f64::from(self.m);
        let mut total = KahanSum::new();
        for &(b, w) in &self.nodes {
            let s = mf * gamma_th * libm::pow(b, self.rf.alpha_r) / self.rf.omega;
            let field = InterferenceField::new(&self.rf, &self.dep, b)?;
            let lt = field.lt_all(m - 1, s, self.route)?;
            // (−1)^u L^{(u)} = E[I^u e^{−sI}] ≥ 0.
            let moments: Vec<f64> = lt.iter().enumerate().map(|(u, v)| if u % 2 == 0 { *v } else { -*v }).collect();
            let damp = libm::exp(-s * noise);
            let mut inner = KahanSum::new();
            let mut sj_over_fact = 1.0;
            for j in 0..m {
                if j > 0 {
                    sj_over_fact *= s / j as f64;
                }
                // E[(N+I)^j e^{−sI}] by the binomial expansion.
                let mut mixed = KahanSum::new();
                let mut binom = 1.0;
                for (u, mom) in moments.iter().enumerate().take(j + 1) {
                    mixed.add(binom * libm::pow(noise, (j - u) as f64) * mom);
                    binom *= (j - u) as f64 / (u + 1) as f64;
                }
                inner.add(sj_over_fact * damp * mixed.value());
            }
            let ratio = inner.cancellation_ratio();
            if ratio > MAX_CANCELLATION {
                return Err(Error::Numeric { what: "alternating sum lost all precision", value: ratio });
            }
            total.add(w * inner.value());
        }
        Ok(Evaluated::new(total.value()))
    }
}

/// P(SIR > γ_th) with an `order`-node rule over the UAV distance.
pub fn cp_rf_sir(gamma_th: f64, rf: &RfLinkParams, dep: &DeploymentParams, order: usize) -> Result<Evaluated> {
    RfCoverage::new(rf, dep, order)?.cp_sir(gamma_th)
}

/// P(SINR > γ_th) with an `order`-node rule over the UAV distance.
pub fn cp_rf_sinr(gamma_th: f64, rf: &RfLinkParams, dep: &DeploymentParams, order: usize) -> Result<Evaluated> {
    RfCoverage::new(rf, dep, order)?.cp_sinr(gamma_th)
}
