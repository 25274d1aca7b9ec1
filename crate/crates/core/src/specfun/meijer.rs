use num_complex::Complex64;

use super::gamma::ln_gamma_complex;
use super::sum::KahanSum;
use crate::error::{ensure, Error, Result};
use crate::integrate::integrate;

const POLE_EPS: f64 = 1e-6;
const SERIES_LIMIT: f64 = 1.0;

/// Parameters of the Gamma-Gamma + pointing-error gain CDF
/// F(z) = ω²/(Γ(α)Γ(β))·G^{3,1}_{2,4}(z | 1, ω²+1; ω², α, β, 0).
///
/// Construction resolves pole coincidences: when two of {ω², α, β} generate
/// colliding residue poles (equal, or spaced by an integer in the direction
/// that makes a pole family overlap) the smaller one is moved up by 1e-6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerFsoParams {
    alpha: f64,
    beta: f64,
    omega_sq: f64,
    original: [f64; 3],
}

/// Record of a pole-coincidence adjustment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    /// (α, β, ω²) as requested.
    pub requested: [f64; 3],
    /// (α, β, ω²) as used.
    pub used: [f64; 3],
}

fn collides_any(x: f64, y: f64) -> bool {
    let d = x - y;
    (d - libm::round(d)).abs() < POLE_EPS
}

fn collides_above(single: f64, family: f64) -> bool {
    let d = single - family;
    d > -POLE_EPS && (d - libm::round(d)).abs() < POLE_EPS
}

impl MeijerFsoParams {
    /// Validates and applies the pole-coincidence rule.
    pub fn new(alpha: f64, beta: f64, omega_sq: f64) -> Result<Self> {
        ensure(alpha > 0.0 && alpha.is_finite(), "alpha must be positive")?;
        ensure(beta > 0.0 && beta.is_finite(), "beta must be positive")?;
        ensure(omega_sq > 0.0 && omega_sq.is_finite(), "omega^2 must be positive")?;
        let mut v = [alpha, beta, omega_sq];
        for _ in 0..6 {
            let [a, b, w] = v;
            if collides_any(a, b) {
                if a <= b {
                    v[0] += POLE_EPS
                } else {
                    v[1] += POLE_EPS
                }
            } else if collides_above(w, a) {
                if w <= a {
                    v[2] += POLE_EPS
                } else {
                    v[0] += POLE_EPS
                }
            } else if collides_above(w, b) {
                if w <= b {
                    v[2] += POLE_EPS
                } else {
                    v[1] += POLE_EPS
                }
            } else {
                return Ok(Self { alpha: v[0], beta: v[1], omega_sq: v[2], original: [alpha, beta, omega_sq] });
            }
        }
        Err(Error::Numeric { what: "unresolved Meijer-G pole coincidence", value: omega_sq })
    }

    /// α as used in evaluation.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// β as used in evaluation.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// ω² as used in evaluation.
    pub fn omega_sq(&self) -> f64 {
        self.omega_sq
    }

    /// The adjustment applied by the pole rule, if any.
    pub fn perturbation(&self) -> Option<Perturbation> {
        let used = [self.alpha, self.beta, self.omega_sq];
        (used != self.original).then_some(Perturbation { requested: self.original, used })
    }

    fn ln_norm(&self) -> f64 {
        libm::log(self.omega_sq) - libm::lgamma(self.alpha) - libm::lgamma(self.beta)
    }
}

/// CDF of the FSO channel power gain at `arg = αβx/(A0 h_l)`.
pub fn meijer_g_fso_cdf(params: &MeijerFsoParams, arg: f64) -> Result<f64> {
    ensure(arg >= 0.0, "Meijer-G argument must be nonnegative")?;
    if arg == 0.0 {
        return Ok(0.0);
    }
    if arg.is_infinite() {
        return Ok(1.0);
    }
    let v = if arg <= SERIES_LIMIT { residue_series(params, arg)? } else { 1.0 - contour_complement(params, arg)? };
    Ok(v.clamp(0.0, 1.0))
}

/// 1 − F at `arg`, without cancellation in the upper tail.
pub fn meijer_g_fso_complement(params: &MeijerFsoParams, arg: f64) -> Result<f64> {
    ensure(arg >= 0.0, "Meijer-G argument must be nonnegative")?;
    if arg == 0.0 {
        return Ok(1.0);
    }
    if arg.is_infinite() {
        return Ok(0.0);
    }
    let v = if arg <= SERIES_LIMIT { 1.0 - residue_series(params, arg)? } else { contour_complement(params, arg)? };
    Ok(v.clamp(0.0, 1.0))
}

/// Three leading residue terms of the CDF, the small-argument asymptote.
pub fn meijer_g_fso_series_tail(params: &MeijerFsoParams, arg: f64) -> Result<f64> {
    ensure(arg >= 0.0, "Meijer-G argument must be nonnegative")?;
    if arg == 0.0 {
        return Ok(0.0);
    }
    let (a, b, w) = (params.alpha, params.beta, params.omega_sq);
    let lz = libm::log(arg);
    let t0 = libm::tgamma(a - w) * libm::tgamma(b - w) / w * libm::exp(w * lz);
    let t1 = libm::tgamma(w - a) * libm::tgamma(b - a) / (a * libm::tgamma(w + 1.0 - a)) * libm::exp(a * lz);
    let t2 = libm::tgamma(w - b) * libm::tgamma(a - b) / (b * libm::tgamma(w + 1.0 - b)) * libm::exp(b * lz);
    Ok(libm::exp(params.ln_norm()) * (t0 + t1 + t2))
}

/// Full residue sum over the poles ω², α + k and β + k.
fn residue_series(p: &MeijerFsoParams, z: f64) -> Result<f64> {
    let (a, b, w) = (p.alpha, p.beta, p.omega_sq);
    let lz = libm::log(z);
    let mut sum = KahanSum::new();
    sum.add(libm::tgamma(a - w) * libm::tgamma(b - w) / w * libm::exp(w * lz));
    family(&mut sum, a, b, w, z, lz)?;
    family(&mut sum, b, a, w, z, lz)?;
    Ok(libm::exp(p.ln_norm()) * sum.value())
}

/// Σ_k (−1)^k/k! Γ(other − own − k) z^{own+k} / ((own+k)(ω² − own − k)).
fn family(sum: &mut KahanSum, own: f64, other: f64, w: f64, z: f64, lz: f64) -> Result<()> {
    let mut coef = libm::tgamma(other - own) * libm::exp(own * lz);
    for k in 0..400 {
        let kf = k as f64;
        let term = coef / ((own + kf) * (w - own - kf));
        sum.add(term);
        if k > 2 && term.abs() < 1e-18 * sum.value().abs() && z < (kf + 1.0) * (other - own - kf - 1.0).abs() {
            return Ok(());
        }
        coef *= -z / ((kf + 1.0) * (other - own - kf - 1.0));
    }
    Err(Error::Convergence("Meijer-G residue series"))
}

/// 1 − F through the Mellin–Barnes integral on Re s = c < 0.
///
/// Moving the contour left of the origin picks up the residue 1 at s = 0, so
/// the remaining line integral is exactly the complement. c sits at the real
/// saddle of the integrand, which keeps the integrand positive-dominated.
fn contour_complement(p: &MeijerFsoParams, z: f64) -> Result<f64> {
    let (a, b, w) = (p.alpha, p.beta, p.omega_sq);
    let lz = libm::log(z);
    let phi = |c: f64| libm::lgamma(a - c) + libm::lgamma(b - c) + c * lz - libm::log(-c) - libm::log(w - c);
    let c = golden_min(phi, -(2.0 * libm::sqrt(z) + a + b + 10.0), -0.2);
    let reference = phi(c);
    let ln_integrand = |t: f64| {
        let s = Complex64::new(c, t);
        ln_gamma_complex(a - s) + ln_gamma_complex(b - s) + s * lz - s.ln() - (w - s).ln() - reference
    };
    let mut upper = 1.0;
    while ln_integrand(upper).re > -45.0 {
        upper *= 2.0;
        if upper > 1e8 {
            return Err(Error::Convergence("Meijer-G contour tail"));
        }
    }
    let integral = integrate(|t| ln_integrand(t).exp().re, 0.0, upper, 1e-19, 1e-14)?;
    // Φ(c) < 0 on the negative axis, so the complement is −(1/π)·∫ Re Φ.
    let value = -integral * libm::exp(reference + p.ln_norm()) / core::f64::consts::PI;
    if !value.is_finite() {
        return Err(Error::Numeric { what: "Meijer-G contour overflow", value: z });
    }
    Ok(value)
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..50 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
