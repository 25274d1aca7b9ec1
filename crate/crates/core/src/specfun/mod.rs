//! Special functions and quadrature rules.

mod bell;
mod gamma;
mod hyp2f1;
mod meijer;
mod quadrature;
mod sum;

pub use bell::{bell_triangle, complete_bell, falling_product, partial_bell, rising_product};
pub use gamma::{gamma, ln_gamma, ln_gamma_complex, lower_incomplete_gamma, regularized_lower_gamma};
pub use hyp2f1::gauss_2f1;
pub use meijer::{meijer_g_fso_cdf, meijer_g_fso_complement, meijer_g_fso_series_tail, MeijerFsoParams, Perturbation};
pub use quadrature::{cheb_gauss_nodes, QuadratureRule};
pub use sum::KahanSum;
