use alloc::vec::Vec;

use super::curve::Evaluated;
use crate::channel::FsoLinkParams;
use crate::error::{ensure, Result};
use crate::specfun::{cheb_gauss_nodes, meijer_g_fso_cdf, meijer_g_fso_series_tail, KahanSum, MeijerFsoParams};
use crate::stochgeom::{pdf_dk2, SystemGeometry};

/// Satellite→CH SNR distribution with the d_k² integral collapsed onto an
/// M-node Chebyshev–Gauss rule over [d_min², d_max²].
#[derive(Debug, Clone)]
pub struct SchModel {
    meijer: MeijerFsoParams,
    /// (Ξ·b_i, weight_i) per node; weights include π/M, b₁, √(1−t²) and the pdf.
    nodes: Vec<(f64, f64)>,
}

impl SchModel {
    /// Precomputes the quadrature nodes for `order` points.
    pub fn new(geom: &SystemGeometry, fso: &FsoLinkParams, order: usize) -> Result<Self> {
        fso.validate()?;
        ensure(order >= 1, "quadrature order must be positive")?;
        let meijer = fso.meijer_params()?;
        let (lo, hi) = (geom.d_min() * geom.d_min(), geom.d_max() * geom.d_max());
        let (b1, b2) = (0.5 * (hi - lo), 0.5 * (hi + lo));
        let rule = cheb_gauss_nodes(order);
        let xi = fso.xi();
        let nodes = rule
            .nodes()
            .iter()
            .map(|&t| {
                let b = b1 * t + b2;
                (xi * b, rule.weight() * b1 * libm::sqrt(1.0 - t * t) * pdf_dk2(b, geom))
            })
            .collect();
        Ok(Self { meijer, nodes })
    }

    /// Number of quadrature nodes.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// The Meijer-G parameters after the pole rule.
    pub fn meijer(&self) -> &MeijerFsoParams {
        &self.meijer
    }

    /// F_{γ_k}(x).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        ensure(x >= 0.0, "SNR must be nonnegative")?;
        let r = libm::sqrt(x);
        let mut s = KahanSum::new();
        for &(arg, w) in &self.nodes {
            s.add(w * meijer_g_fso_cdf(&self.meijer, arg * r)?);
        }
        Ok(s.value().clamp(0.0, 1.0))
    }

    /// 1 − F_{γ_k}(γ_th).
    pub fn cp(&self, gamma_th: f64) -> Result<f64> {
        Ok(1.0 - self.cdf(gamma_th)?)
    }

    /// High-SNR coverage with the three leading residue terms.
    pub fn cp_asymptotic(&self, gamma_th: f64) -> Result<Evaluated> {
        Ok(Evaluated::new(1.0 - self.outage_asymptotic(gamma_th)?))
    }

    /// The leading-term outage 1 − [`cp_asymptotic`](Self::cp_asymptotic), kept
    /// separate so small values do not lose digits.
    pub fn outage_asymptotic(&self, gamma_th: f64) -> Result<f64> {
        ensure(gamma_th >= 0.0, "SNR must be nonnegative")?;
        let r = libm::sqrt(gamma_th);
        let mut s = KahanSum::new();
        for &(arg, w) in &self.nodes {
            s.add(w * meijer_g_fso_series_tail(&self.meijer, arg * r)?);
        }
        Ok(s.value())
    }
}

/// F_{γ_k}(x) with an `order`-node rule.
pub fn cdf_snr_sch(x: f64, geom: &SystemGeometry, fso: &FsoLinkParams, order: usize) -> Result<f64> {
    SchModel::new(geom, fso, order)?.cdf(x)
}

/// Coverage probability of the satellite→CH link.
pub fn cp_sch(gamma_th: f64, geom: &SystemGeometry, fso: &FsoLinkParams, order: usize) -> Result<f64> {
    SchModel::new(geom, fso, order)?.cp(gamma_th)
}

/// High-SNR approximation of [`cp_sch`]; raw value may leave [0, 1].
pub fn cp_sch_asymptotic(gamma_th: f64, geom: &SystemGeometry, fso: &FsoLinkParams, order: usize) -> Result<Evaluated> {
    SchModel::new(geom, fso, order)?.cp_asymptotic(gamma_th)
}

/// Diversity order min{ω², α, β}.
pub fn diversity_order_sch(fso: &FsoLinkParams) -> f64 {
    (fso.omega * fso.omega).min(fso.alpha).min(fso.beta)
}
