//! Coverage probabilities of the satellite→CH link, the CH→UAV link and the
//! dual-hop decode-and-forward chain.

mod curve;
mod e2e;
mod fso;
mod interference;
mod rf;

pub use curve::{CaseTag, CoverageCurve, CoverageQuery, Evaluated, RfCase};
pub use e2e::{op_e2e, Orders};
pub use fso::{cdf_snr_sch, cp_sch, cp_sch_asymptotic, diversity_order_sch, SchModel};
pub use interference::{laplace_interference, lt_derivative, script_a_derivatives, DerivativeRoute, InterferenceField};
pub use rf::{
    cdf_rf_nointerference, cp_rf_nointerference, cp_rf_nointerference_asymptotic, cp_rf_sinr, cp_rf_sir,
    diversity_order_rf, outage_rf_nointerference_asymptotic, RfCoverage, M_MAX,
};
