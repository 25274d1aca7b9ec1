use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{ensure, Error, Result};
use crate::specfun::regularized_lower_gamma;

/// CH → UAV RF link (linear SI values; powers in W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfLinkParams {
    /// Nakagami parameter m (a positive integer).
    pub m: f64,
    /// Mean channel power Ω.
    pub omega: f64,
    /// Path loss at 1 m, ρ.
    pub rho: f64,
    /// Path-loss exponent α_r.
    pub alpha_r: f64,
    /// Relay transmit power (W).
    pub p_r: f64,
    /// Receiver noise power (W).
    pub n_r: f64,
}

impl RfLinkParams {
    /// Checks positivity and that m is an integer.
    pub fn validate(&self) -> Result<()> {
        self.m_int()?;
        let all = [self.omega, self.rho, self.alpha_r, self.p_r, self.n_r];
        ensure(all.iter().all(|v| *v > 0.0 && v.is_finite()), "RF parameters must be finite and positive")
    }

    /// m as an integer; non-integer m is rejected.
    pub fn m_int(&self) -> Result<u32> {
        ensure(
            self.m >= 1.0 && self.m == libm::floor(self.m) && self.m <= 1e6,
            "Nakagami m must be a positive integer",
        )?;
        Ok(self.m as u32)
    }

    /// ρN_R/P_R, the noise-to-power ratio at 1 m.
    pub fn noise_ratio(&self) -> f64 {
        self.rho * self.n_r / self.p_r
    }
}

/// CDF of the Nakagami-m power gain, P(m, m x/Ω).
pub fn cdf_nakagami(x: f64, p: &RfLinkParams) -> Result<f64> {
    let m = p.m_int()?;
    ensure(x >= 0.0, "gain must be nonnegative")?;
    regularized_lower_gamma(f64::from(m), f64::from(m) * x / p.omega)
}

/// Path loss ρ·d^{α_r}.
pub fn rf_pathloss(d: f64, p: &RfLinkParams) -> Result<f64> {
    ensure(d > 0.0 && d.is_finite(), "distance must be positive")?;
    Ok(p.rho * libm::pow(d, p.alpha_r))
}

/// Noise-limited SNR P_R·g/(ρ d^{α_r} N_R).
pub fn rf_snr(g: f64, d: f64, p: &RfLinkParams) -> Result<f64> {
    Ok(p.p_r * g / (rf_pathloss(d, p)? * p.n_r))
}

/// Gamma(m, Ω/m) power-gain sampler.
#[derive(Debug, Clone, Copy)]
pub struct NakagamiSampler(Gamma<f64>);

impl NakagamiSampler {
    /// Sampler for the given link.
    pub fn new(p: &RfLinkParams) -> Result<Self> {
        p.validate()?;
        Gamma::new(p.m, p.omega / p.m).map(Self).map_err(|_| Error::Domain("invalid Nakagami parameters"))
    }
}

impl Distribution<f64> for NakagamiSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.0.sample(rng)
    }
}

/// One draw of the Nakagami-m power gain.
pub fn sample_nakagami_gain<R: Rng + ?Sized>(p: &RfLinkParams, rng: &mut R) -> Result<f64> {
    Ok(NakagamiSampler::new(p)?.sample(rng))
}
