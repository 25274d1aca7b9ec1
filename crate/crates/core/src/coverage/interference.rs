use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::channel::RfLinkParams;
use crate::error::{ensure, Error, Result};
use crate::specfun::{bell_triangle, complete_bell, gauss_2f1, rising_product, KahanSum};
use crate::stochgeom::DeploymentParams;

/// How the s-derivatives of 𝒜 are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeRoute {
    /// Differentiates under the integral: one ₂F₁ with first parameter m + n
    /// per block. Free of cancellation.
    #[default]
    Direct,
    /// Leibniz expansion of s^{−m}·(s^m·…) with Faà di Bruno inner
    /// derivatives. Loses about log₁₀(Yⁿ) digits when s is small.
    Leibniz,
}

/// Interference seen by a UAV at distance `d` from its cluster head:
/// interferers of intensity λ_CH in the D_min–D_max shell around the CH,
/// Nakagami-m gains, path loss r^{−α_r}.
#[derive(Debug, Clone)]
pub struct InterferenceField {
    m: f64,
    omega: f64,
    alpha: f64,
    d: f64,
    lambda: f64,
    volume: f64,
    /// (coefficient, a', upper u, lower u), u = r².
    blocks: [(f64, f64, f64, f64); 7],
}

impl InterferenceField {
    /// Field for one CH–UAV distance `d ∈ (0, D]`.
    pub fn new(rf: &RfLinkParams, dep: &DeploymentParams, d: f64) -> Result<Self> {
        rf.validate()?;
        dep.validate()?;
        ensure(d > 0.0 && d <= dep.serving_radius, "d_kj must lie in (0, D]")?;
        let a = rf.alpha_r;
        let (lo, hi) = (dep.d_min, dep.d_max);
        let e_min = (lo - d) * (lo - d);
        let e_g1 = (lo + d) * (lo + d);
        let e_g2 = (hi - d) * (hi - d);
        let e_max = (hi + d) * (hi + d);
        let blocks = [
            (1.0, 4.0 / a, e_g1, e_min),
            (2.0 * d, 3.0 / a, e_g1, e_min),
            ((d - lo) * (d + lo), 2.0 / a, e_g1, e_min),
            (4.0 * d, 3.0 / a, e_g2, e_g1),
            (-1.0, 4.0 / a, e_max, e_g2),
            (2.0 * d, 3.0 / a, e_max, e_g2),
            ((hi - d) * (hi + d), 2.0 / a, e_max, e_g2),
        ];
        Ok(Self {
            m: rf.m,
            omega: rf.omega,
            alpha: a,
            d,
            lambda: dep.lambda_ch(),
            volume: dep.interference_volume(),
            blocks,
        })
    }

    /// CH–UAV distance.
    pub fn distance(&self) -> f64 {
        self.d
    }

    /// λ_CH·V₁, the mean number of interferers.
    pub fn mean_interferers(&self) -> f64 {
        self.lambda * self.volume
    }

    /// 𝒜(s) = ln E[e^{−sI}].
    pub fn script_a(&self, s: f64) -> Result<f64> {
        ensure(s > 0.0 && s.is_finite(), "s must be positive")?;
        if self.lambda == 0.0 {
            return Ok(0.0);
        }
        let kappa = self.m / (self.omega * s);
        let mut acc = KahanSum::new();
        for &(coef, ap, up, lo) in &self.blocks {
            acc.add(coef * (self.r(ap, up, kappa)? - self.r(ap, lo, kappa)?));
        }
        Ok((-self.lambda * PI / (2.0 * self.d) * acc.value()).min(0.0))
    }

    /// 𝒜(s), 𝒜′(s), …, 𝒜^{(n_max)}(s).
    pub fn script_a_all(&self, n_max: usize, s: f64, route: DerivativeRoute) -> Result<Vec<f64>> {
        ensure(s > 0.0 && s.is_finite(), "s must be positive")?;
        let mut out = vec![0.0; n_max + 1];
        if self.lambda == 0.0 {
            return Ok(out);
        }
        out[0] = self.script_a(s)?;
        match route {
            DerivativeRoute::Direct => {
                for (n, slot) in out.iter_mut().enumerate().skip(1) {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let scale = rising_product(self.m, n as u32) * libm::pow(s, -(n as f64));
                    *slot = self.lambda * self.volume * sign * scale * self.direct_sum(n, s)?;
                }
            }
            DerivativeRoute::Leibniz => {
                let psi: Vec<f64> = (1..=n_max.max(1))
                    .map(|k| {
                        let f = (1..=k).fold(1.0, |acc, j| acc * j as f64);
                        if k % 2 == 1 {
                            f
                        } else {
                            -f
                        }
                    })
                    .collect();
                let bell = bell_triangle(n_max, &psi)?;
                let k_vals = (0..=n_max).map(|l| self.leibniz_block_sum(l, s, &bell)).collect::<Result<Vec<_>>>()?;
                let pre = self.lambda * PI / (2.0 * self.d);
                for (n, slot) in out.iter_mut().enumerate().skip(1) {
                    let mut acc = KahanSum::new();
                    let mut binom = 1.0;
                    for (l, k_l) in k_vals.iter().enumerate().take(n + 1) {
                        let sign = if (n - l) % 2 == 0 { 1.0 } else { -1.0 };
                        acc.add(binom * sign * rising_product(self.m, (n - l) as u32) * k_l);
                        binom *= (n - l) as f64 / (l + 1) as f64;
                    }
                    *slot = pre * libm::pow(s, -(n as f64)) * acc.value();
                }
            }
        }
        Ok(out)
    }

    /// L(s), L′(s), …, L^{(n_max)}(s) for the Laplace transform L = e^{𝒜}.
    pub fn lt_all(&self, n_max: usize, s: f64, route: DerivativeRoute) -> Result<Vec<f64>> {
        let a = self.script_a_all(n_max, s, route)?;
        let e = libm::exp(a[0]);
        let tri = bell_triangle(n_max, &a[1..])?;
        Ok((0..=n_max).map(|u| e * complete_bell(&tri, u)).collect())
    }

    /// (π/(2dV₁))·Σ blocks of the n-th order antiderivative differences.
    fn direct_sum(&self, n: usize, s: f64) -> Result<f64> {
        let kappa = self.m / (self.omega * s);
        let mut acc = KahanSum::new();
        for &(coef, ap, up, lo) in &self.blocks {
            acc.add(coef * (self.h(n, ap, up, kappa)? - self.h(n, ap, lo, kappa)?));
        }
        Ok(PI / (2.0 * self.d * self.volume) * acc.value())
    }

    /// ∫₀ᵉ u^{p} Y^m (1+Y)^{−m−n} du with Y = κ u^{α/2} and a' = 2(p+1)/α.
    fn h(&self, n: usize, ap: f64, e: f64, kappa: f64) -> Result<f64> {
        let (m, a) = (self.m, self.alpha);
        let ln_e = libm::log(e);
        let y = kappa * libm::exp(0.5 * a * ln_e);
        let f = gauss_2f1(m + n as f64, m + ap, m + ap + 1.0, -y)?;
        finite(libm::exp(libm::log(2.0 / ((m + ap) * a)) + m * libm::log(y) + 0.5 * ap * a * ln_e + libm::log(f)))
    }

    /// ∫₀ᵉ u^{p}(1 − (Y/(1+Y))^m) du, expanded as Σ_{k<m} ∫ u^{p} Y^k (1+Y)^{−k−1} du
    /// so that 𝒜 = λV₁(I₃ − 1) is formed without subtracting 1.
    fn r(&self, ap: f64, e: f64, kappa: f64) -> Result<f64> {
        let a = self.alpha;
        let ln_e = libm::log(e);
        let ln_y = libm::log(kappa) + 0.5 * a * ln_e;
        let mut acc = KahanSum::new();
        for k in 0..self.m as u32 {
            let kf = f64::from(k);
            let f = gauss_2f1(kf + 1.0, ap + kf, ap + kf + 1.0, -libm::exp(ln_y))?;
            acc.add(libm::exp(kf * ln_y + libm::log(f)) / (ap + kf));
        }
        finite(2.0 / a * libm::exp(0.5 * ap * a * ln_e) * acc.value())
    }

    fn leibniz_block_sum(&self, l: usize, s: f64, bell: &[Vec<f64>]) -> Result<f64> {
        let kappa = self.m / (self.omega * s);
        let mut acc = KahanSum::new();
        for &(coef, ap, up, lo) in &self.blocks {
            acc.add(coef * (self.k_term(l, ap, up, kappa, bell)? - self.k_term(l, ap, lo, kappa, bell)?));
        }
        Ok(acc.value())
    }

    fn k_term(&self, l: usize, ap: f64, e: f64, kappa: f64, bell: &[Vec<f64>]) -> Result<f64> {
        let (m, a) = (self.m, self.alpha);
        let y = kappa * libm::pow(e, 0.5 * a);
        let pre = 2.0 / ((m + ap) * a) * libm::pow(y, m) * libm::pow(e, 0.5 * ap * a);
        if l == 0 {
            return finite(pre * gauss_2f1(m, m + ap, m + ap + 1.0, -y)?);
        }
        let mut acc = KahanSum::new();
        for (q, bell_lq) in bell[l].iter().enumerate().skip(1) {
            let b = m + ap + q as f64;
            let f = gauss_2f1(m + q as f64, b, b + 1.0, -y)?;
            acc.add(rising_product(m, q as u32) * (m + ap) / b * f * libm::pow(y, q as f64) * bell_lq);
        }
        finite(pre * acc.value())
    }
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric { what: "interference block overflow", value: v })
    }
}

/// E[e^{−sI}] for a UAV at distance `d_kj` from its cluster head.
pub fn laplace_interference(s: f64, d_kj: f64, rf: &RfLinkParams, dep: &DeploymentParams) -> Result<f64> {
    Ok(libm::exp(InterferenceField::new(rf, dep, d_kj)?.script_a(s)?))
}

/// n-th s-derivative of 𝒜 = ln E[e^{−sI}]; n = 0 returns 𝒜. Requires n ≤ m − 1.
pub fn script_a_derivatives(n: usize, s: f64, d_kj: f64, rf: &RfLinkParams, dep: &DeploymentParams) -> Result<f64> {
    ensure((n as f64) < rf.m, "derivative order must be below m")?;
    Ok(InterferenceField::new(rf, dep, d_kj)?.script_a_all(n, s, DerivativeRoute::Direct)?[n])
}

/// n-th s-derivative of E[e^{−sI}]. Requires n ≤ m − 1.
pub fn lt_derivative(n: usize, s: f64, d_kj: f64, rf: &RfLinkParams, dep: &DeploymentParams) -> Result<f64> {
    ensure((n as f64) < rf.m, "derivative order must be below m")?;
    Ok(InterferenceField::new(rf, dep, d_kj)?.lt_all(n, s, DerivativeRoute::Direct)?[n])
}
