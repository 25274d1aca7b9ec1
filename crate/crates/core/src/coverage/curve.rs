use alloc::vec::Vec;

use crate::error::{ensure, Result};

/// Which CH→UAV model is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfCase {
    /// Noise only.
    NoInterference,
    /// Interference only.
    Sir,
    /// Interference and noise.
    Sinr,
}

/// Which coverage expression a query targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Satellite → CH optical link.
    FsoSch,
    /// CH → UAV RF link.
    Rf(RfCase),
    /// Dual-hop outage with the given RF model on the second hop.
    E2e(RfCase),
}

/// A threshold (linear) and the expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageQuery {
    /// Linear SNR/SIR/SINR threshold.
    pub gamma_th: f64,
    /// Target expression.
    pub case: CaseTag,
}

impl CoverageQuery {
    /// Validated query.
    pub fn new(gamma_th: f64, case: CaseTag) -> Result<Self> {
        ensure(gamma_th > 0.0 && gamma_th.is_finite(), "threshold must be positive")?;
        Ok(Self { gamma_th, case })
    }
}

/// A probability together with the unclipped value it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    /// Value as computed.
    pub raw: f64,
    /// Value clipped to [0, 1].
    pub value: f64,
}

impl Evaluated {
    /// Wraps a raw value.
    pub fn new(raw: f64) -> Self {
        Self { raw, value: raw.clamp(0.0, 1.0) }
    }

    /// True when clipping changed the value.
    pub fn clipped(&self) -> bool {
        self.raw != self.value
    }
}

/// Analytic values over a threshold or sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCurve {
    /// Grid abscissae (dB or dBm, as labelled by the caller).
    pub grid: Vec<f64>,
    /// Exact expression at each grid point.
    pub analytic: Vec<Evaluated>,
    /// High-SNR asymptote, where defined.
    pub asymptotic: Option<Vec<Evaluated>>,
}
