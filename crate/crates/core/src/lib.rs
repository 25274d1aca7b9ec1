//! Coverage and outage analysis for a dual-hop satellite → cluster-head (FSO)
//! → UAV (RF) network whose relays form a 3D Matérn hard-core point process.
//!
//! The crate is `no_std` (with `alloc`) and contains the analytic engine:
//!
//! * [`specfun`]: gamma family, Gauss ₂F₁, the pointing-error Meijer-G CDF,
//!   partial Bell polynomials and quadrature rules.
//! * [`stochgeom`]: the spherical-cone shell, HPPP/MHCPP sampling and the
//!   distance distributions.
//! * [`channel`]: Gamma-Gamma + pointing-error FSO and Nakagami-m RF links.
//! * [`coverage`]: coverage probabilities, asymptotics and e2e outage.
//!
//! Lengths are metres, powers watts, angles radians; see [`defaults`] for the
//! reference parameter set.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod channel;
pub mod coverage;
pub mod defaults;
mod error;
pub mod integrate;
pub mod specfun;
pub mod stochgeom;
pub mod units;

pub use error::{Error, Result};
