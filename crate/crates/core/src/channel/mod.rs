//! FSO and RF link models.

mod fso;
mod rf;

pub use fso::{
    cdf_fso_gain, cdf_fso_snr_given_d, fso_snr, sample_fso_gain, FsoGainDraw, FsoGainSampler, FsoLinkParams,
};
pub use rf::{cdf_nakagami, rf_pathloss, rf_snr, sample_nakagami_gain, NakagamiSampler, RfLinkParams};
