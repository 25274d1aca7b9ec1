//! Spherical-cone shell geometry, point processes and distance laws.

mod deployment;
mod geometry;
mod point;
mod process;

pub use deployment::{mhcpp_intensity, pdf_dji1_given_dkj, pdf_dkj, DeploymentParams, DeploymentWarning};
pub use geometry::{cdf_dk2, cdf_lk, pdf_dk2, ShellCone, SystemGeometry};
pub use point::Point3;
pub use process::{
    retain_hard_core, sample_count_hppp, sample_hppp, sample_hppp_box, sample_mhcpp, sample_uniform_ball,
    sample_uniform_shell, sample_uniform_shell_cone, thin_mhcpp, EdgeMode, MhcppRealization, PointSample, ProcessKind,
};
