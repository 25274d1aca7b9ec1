use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{ensure, Error, Result};
use crate::specfun::{meijer_g_fso_cdf, MeijerFsoParams};

/// Optical powers enter the SNR expression in milliwatts.
const MW_PER_W: f64 = 1e3;

/// Satellite → CH optical link (linear SI values; powers in W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsoLinkParams {
    /// Large-scale turbulence shape α.
    pub alpha: f64,
    /// Small-scale turbulence shape β.
    pub beta: f64,
    /// Pointing-error ratio ω (beam radius over jitter deviation).
    pub omega: f64,
    /// Maximal collected-power fraction A0.
    pub a0: f64,
    /// Atmospheric loss h_l (linear).
    pub h_l: f64,
    /// Photoelectric conversion ratio η.
    pub eta: f64,
    /// Wavelength (m).
    pub wavelength: f64,
    /// Transmit telescope gain (linear).
    pub g_s: f64,
    /// Receive telescope gain (linear).
    pub g_r: f64,
    /// Transmit optical power (W).
    pub p_s: f64,
    /// Receiver noise power (W).
    pub n_f: f64,
}

impl FsoLinkParams {
    /// Checks that every field is finite and positive.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.alpha,
            self.beta,
            self.omega,
            self.a0,
            self.h_l,
            self.eta,
            self.wavelength,
            self.g_s,
            self.g_r,
            self.p_s,
            self.n_f,
        ];
        ensure(all.iter().all(|v| *v > 0.0 && v.is_finite()), "FSO parameters must be finite and positive")?;
        ensure(self.a0 <= 1.0, "A0 must lie in (0, 1]")
    }

    /// Meijer-G parameters (α, β, ω²).
    pub fn meijer_params(&self) -> Result<MeijerFsoParams> {
        MeijerFsoParams::new(self.alpha, self.beta, self.omega * self.omega)
    }

    /// Ξ (m⁻²): the CDF of γ_k given d_k is F_h evaluated at Ξ d_k² √x.
    pub fn xi(&self) -> f64 {
        let (p_s, n_f) = (self.p_s * MW_PER_W, self.n_f * MW_PER_W);
        self.alpha * self.beta * (16.0 * PI * PI) * libm::sqrt(n_f)
            / (self.a0 * self.h_l * self.eta * self.wavelength * self.wavelength * p_s * self.g_s * self.g_r)
    }

    /// αβ/(A0 h_l), the map from gain to Meijer-G argument.
    pub fn gain_scale(&self) -> f64 {
        self.alpha * self.beta / (self.a0 * self.h_l)
    }
}

/// CDF of the channel power gain h.
pub fn cdf_fso_gain(x: f64, p: &FsoLinkParams) -> Result<f64> {
    ensure(x >= 0.0, "gain must be nonnegative")?;
    meijer_g_fso_cdf(&p.meijer_params()?, p.gain_scale() * x)
}

/// Received SNR γ_k for gain `h` at distance `d_k`.
pub fn fso_snr(h: f64, d_k: f64, p: &FsoLinkParams) -> Result<f64> {
    ensure(d_k > 0.0 && d_k.is_finite(), "link distance must be positive")?;
    ensure(h >= 0.0, "gain must be nonnegative")?;
    let amp =
        p.eta * p.p_s * MW_PER_W * p.g_s * p.g_r * p.wavelength * p.wavelength * h / ((16.0 * PI * PI) * d_k * d_k);
    Ok(amp * amp / (p.n_f * MW_PER_W))
}

/// P{γ_k ≤ x | d_k² = `d_k_sq`}.
pub fn cdf_fso_snr_given_d(x: f64, d_k_sq: f64, p: &FsoLinkParams) -> Result<f64> {
    ensure(x >= 0.0, "SNR threshold must be nonnegative")?;
    ensure(d_k_sq > 0.0, "squared distance must be positive")?;
    meijer_g_fso_cdf(&p.meijer_params()?, p.xi() * d_k_sq * libm::sqrt(x))
}

/// One gain draw with its factors: h = h_l·h_a·h_p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsoGainDraw {
    /// Total power gain.
    pub h: f64,
    /// Turbulence factor (unit mean).
    pub h_a: f64,
    /// Pointing-error factor in [0, A0].
    pub h_p: f64,
}

/// Sampler for the FSO gain: h_a is a product of unit-mean Gamma(α) and
/// Gamma(β) variates, h_p = A0·U^{1/ω²} with U uniform.
#[derive(Debug, Clone, Copy)]
pub struct FsoGainSampler {
    large: Gamma<f64>,
    small: Gamma<f64>,
    h_l: f64,
    a0: f64,
    inv_omega_sq: f64,
}

impl FsoGainSampler {
    /// Sampler for the given link.
    pub fn new(p: &FsoLinkParams) -> Result<Self> {
        p.validate()?;
        let large = Gamma::new(p.alpha, 1.0 / p.alpha).map_err(|_| Error::Domain("invalid alpha"))?;
        let small = Gamma::new(p.beta, 1.0 / p.beta).map_err(|_| Error::Domain("invalid beta"))?;
        Ok(Self { large, small, h_l: p.h_l, a0: p.a0, inv_omega_sq: 1.0 / (p.omega * p.omega) })
    }

    /// Draws h together with its turbulence and pointing factors.
    pub fn sample_parts<R: Rng + ?Sized>(&self, rng: &mut R) -> FsoGainDraw {
        let h_a = self.large.sample(rng) * self.small.sample(rng);
        let h_p = self.a0 * libm::pow(rng.random::<f64>(), self.inv_omega_sq);
        FsoGainDraw { h: self.h_l * h_a * h_p, h_a, h_p }
    }
}

impl Distribution<f64> for FsoGainSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sample_parts(rng).h
    }
}

/// One draw of the FSO power gain.
pub fn sample_fso_gain<R: Rng + ?Sized>(p: &FsoLinkParams, rng: &mut R) -> Result<f64> {
    Ok(FsoGainSampler::new(p)?.sample(rng))
}
