//! Reference parameter set used throughout the numerical study.

use core::f64::consts::PI;

use crate::channel::{FsoLinkParams, RfLinkParams};
use crate::stochgeom::{DeploymentParams, SystemGeometry};
use crate::units::{db_to_linear, dbm_to_watts, km, per_km3};

/// Default Chebyshev–Gauss order for the satellite-link distance integral.
pub const M_F: usize = 256;
/// Default Chebyshev–Gauss order for the CH–UAV distance integral.
pub const M_R: usize = 128;

/// (α, β) for weak turbulence.
pub const WEAK_TURBULENCE: (f64, f64) = (4.76, 3.03);
/// (α, β) for moderate turbulence.
pub const MODERATE_TURBULENCE: (f64, f64) = (4.0, 1.9);
/// (α, β) for strong turbulence.
pub const STRONG_TURBULENCE: (f64, f64) = (4.2, 1.4);

/// R = 6376 km, H_U = 50 km, H_S = 35761 km, ξ₀ = π/800.
pub fn geometry() -> SystemGeometry {
    SystemGeometry::new(km(6376.0), km(50.0), km(35761.0), PI / 800.0).expect("reference geometry is valid")
}

/// Moderate turbulence, ω = 1.1, A0 = 0.5, h_l = −0.35 dB, η = 0.5,
/// λ = 1550 nm, G_S = G_R = 107.85 dB, P_S = 40 dBm, N_F = −100 dBm.
pub fn fso() -> FsoLinkParams {
    FsoLinkParams {
        alpha: MODERATE_TURBULENCE.0,
        beta: MODERATE_TURBULENCE.1,
        omega: 1.1,
        a0: 0.5,
        h_l: db_to_linear(-0.35),
        eta: 0.5,
        wavelength: 1550e-9,
        g_s: db_to_linear(107.85),
        g_r: db_to_linear(107.85),
        p_s: dbm_to_watts(40.0),
        n_f: dbm_to_watts(-100.0),
    }
}

/// m = 5, Ω = 1, ρ = 7018, α_r = 2, P_R = 30 dBm, N_R = −100 dBm.
pub fn rf() -> RfLinkParams {
    RfLinkParams { m: 5.0, omega: 1.0, rho: 7018.0, alpha_r: 2.0, p_r: dbm_to_watts(30.0), n_r: dbm_to_watts(-100.0) }
}

/// λ_P = 0.001 km⁻³, D_min = 2 km, D = 1 km, D_max = 20 km, λ_U = 1 km⁻³.
pub fn deployment() -> DeploymentParams {
    DeploymentParams {
        lambda_p: per_km3(0.001),
        d_min: km(2.0),
        serving_radius: km(1.0),
        d_max: km(20.0),
        lambda_u: per_km3(1.0),
    }
}
