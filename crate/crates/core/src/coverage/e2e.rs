use super::curve::RfCase;
use super::fso::SchModel;
use super::rf::RfCoverage;
use crate::defaults::{M_F, M_R};
use crate::error::{ensure, Result};

/// Quadrature orders for the two hops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orders {
    /// Nodes over the satellite→CH squared distance.
    pub m_f: usize,
    /// Nodes over the CH→UAV distance.
    pub m_r: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Self { m_f: M_F, m_r: M_R }
    }
}

/// Dual-hop decode-and-forward outage 1 − P_cov,SCH(γ)·P_cov,RF(γ).
pub fn op_e2e(gamma_th: f64, sch: &SchModel, rf: &RfCoverage, case: RfCase) -> Result<f64> {
    ensure(gamma_th > 0.0, "threshold must be positive")?;
    let first = sch.cp(gamma_th)?;
    let second = match case {
        RfCase::NoInterference => rf.cp_nointerference(gamma_th)?,
        RfCase::Sir => rf.cp_sir(gamma_th)?.value,
        RfCase::Sinr => rf.cp_sinr(gamma_th)?.value,
    };
    Ok(1.0 - first * second)
}
