use core::f64::consts::PI;

use super::point::Point3;
use crate::error::{ensure, Result};
use crate::integrate::integrate_breaks;

/// Region between spheres of radius `inner` and `outer` within polar angle
/// `half_angle` of the +z axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellCone {
    inner: f64,
    outer: f64,
    half_angle: f64,
}

impl ShellCone {
    /// Validated region; `half_angle = π` gives the full shell.
    pub fn new(inner: f64, outer: f64, half_angle: f64) -> Result<Self> {
        ensure(inner >= 0.0 && outer > inner, "shell radii must satisfy 0 <= inner < outer")?;
        ensure(half_angle > 0.0 && half_angle <= PI, "cone half-angle must be in (0, pi]")?;
        Ok(Self { inner, outer, half_angle })
    }

    /// Inner radius.
    pub fn inner(&self) -> f64 {
        self.inner
    }

    /// Outer radius.
    pub fn outer(&self) -> f64 {
        self.outer
    }

    /// Cone half-angle.
    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// 1 − cos(half-angle), computed without cancellation.
    pub fn one_minus_cos(&self) -> f64 {
        let s = libm::sin(0.5 * self.half_angle);
        2.0 * s * s
    }

    /// Volume (2π/3)(1 − cos ξ₀)(outer³ − inner³).
    pub fn volume(&self) -> f64 {
        2.0 * PI / 3.0 * self.one_minus_cos() * cube_diff(self.outer, self.inner)
    }

    /// Membership test.
    pub fn contains(&self, p: Point3) -> bool {
        let r = p.norm();
        r >= self.inner && r <= self.outer && (r == 0.0 || p.z >= r * libm::cos(self.half_angle))
    }

    /// Axis-aligned box enclosing the region: (min corner, max corner).
    pub fn bounding_box(&self) -> (Point3, Point3) {
        let h = self.half_angle;
        let lateral = if h >= PI / 2.0 { self.outer } else { self.outer * libm::sin(h) };
        let zmin = if h >= PI / 2.0 { self.outer * libm::cos(h).min(0.0) } else { self.inner * libm::cos(h) };
        (Point3::new(-lateral, -lateral, zmin), Point3::new(lateral, lateral, self.outer))
    }
}

fn cube_diff(a: f64, b: f64) -> f64 {
    (a - b) * (a * a + a * b + b * b)
}

/// Earth radius R, shell thickness H_U, satellite height H_S above the shell
/// top and cone half-angle ξ₀; the satellite sits at (0, 0, L) with
/// L = R + H_U + H_S.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemGeometry {
    earth_radius: f64,
    shell_thickness: f64,
    satellite_height: f64,
    cone_half_angle: f64,
}

impl SystemGeometry {
    /// Validated geometry; lengths in metres.
    pub fn new(earth_radius: f64, shell_thickness: f64, satellite_height: f64, cone_half_angle: f64) -> Result<Self> {
        ensure(earth_radius > 0.0 && earth_radius.is_finite(), "Earth radius must be positive")?;
        ensure(shell_thickness > 0.0 && shell_thickness.is_finite(), "shell thickness must be positive")?;
        ensure(satellite_height > 0.0 && satellite_height.is_finite(), "satellite height must be positive")?;
        ensure(cone_half_angle > 0.0 && cone_half_angle < PI / 2.0, "cone half-angle must be in (0, pi/2)")?;
        let g = Self { earth_radius, shell_thickness, satellite_height, cone_half_angle };
        let l = g.satellite_distance();
        ensure(l * libm::sin(cone_half_angle) < satellite_height, "cone too wide for the satellite height")?;
        Ok(g)
    }

    /// R.
    pub fn earth_radius(&self) -> f64 {
        self.earth_radius
    }

    /// H_U.
    pub fn shell_thickness(&self) -> f64 {
        self.shell_thickness
    }

    /// H_S.
    pub fn satellite_height(&self) -> f64 {
        self.satellite_height
    }

    /// ξ₀.
    pub fn cone_half_angle(&self) -> f64 {
        self.cone_half_angle
    }

    /// L = R + H_U + H_S.
    pub fn satellite_distance(&self) -> f64 {
        self.earth_radius + self.shell_thickness + self.satellite_height
    }

    /// Satellite position.
    pub fn satellite(&self) -> Point3 {
        Point3::new(0.0, 0.0, self.satellite_distance())
    }

    /// The cluster-head region V.
    pub fn region(&self) -> ShellCone {
        ShellCone {
            inner: self.earth_radius,
            outer: self.earth_radius + self.shell_thickness,
            half_angle: self.cone_half_angle,
        }
    }

    /// |V|.
    pub fn volume(&self) -> f64 {
        self.region().volume()
    }

    /// Shortest satellite–CH distance, H_S.
    pub fn d_min(&self) -> f64 {
        self.satellite_height
    }

    /// Longest satellite–CH distance, reached at radius R on the cone edge.
    pub fn d_max(&self) -> f64 {
        libm::sqrt(self.dist_sq_at(self.earth_radius, self.region().one_minus_cos()))
    }

    /// Squared distance from the satellite to a point at radius r and polar angle ξ.
    pub fn dist_sq_at(&self, r: f64, one_minus_cos: f64) -> f64 {
        let l = self.satellite_distance();
        (l - r) * (l - r) + 2.0 * r * l * one_minus_cos
    }

    /// τ₁(x) = max{R, L − √x}.
    pub fn tau1(&self, x: f64) -> f64 {
        self.earth_radius.max(self.satellite_distance() - libm::sqrt(x))
    }

    /// τ₂(x) = min{R + H_U, L cos ξ₀ − √(x − L² sin² ξ₀)}.
    pub fn tau2(&self, x: f64) -> f64 {
        let l = self.satellite_distance();
        let (s, c) = (libm::sin(self.cone_half_angle), libm::cos(self.cone_half_angle));
        let under = (x - l * l * s * s).max(0.0);
        (self.earth_radius + self.shell_thickness).min(l * c - libm::sqrt(under))
    }

    /// Points where the d_k² density changes form, inside (d_min², d_max²).
    pub fn dk2_breakpoints(&self) -> [f64; 2] {
        let top = self.earth_radius + self.shell_thickness;
        let a = self.dist_sq_at(top, self.region().one_minus_cos());
        let gap = self.satellite_distance() - self.earth_radius;
        let b = gap * gap;
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }
}

/// Density of d_k² for a CH uniform in V.
pub fn pdf_dk2(x: f64, geom: &SystemGeometry) -> f64 {
    let lo = geom.d_min() * geom.d_min();
    let hi = geom.d_max() * geom.d_max();
    if !(x >= lo && x <= hi) {
        return 0.0;
    }
    let (t1, t2) = (geom.tau1(x), geom.tau2(x));
    let k = PI / (2.0 * geom.volume() * geom.satellite_distance());
    k * (t2 * t2 - t1 * t1).max(0.0)
}

/// CDF of l_k, the CH distance from the Earth centre.
pub fn cdf_lk(x: f64, geom: &SystemGeometry) -> f64 {
    let r = geom.earth_radius();
    let top = r + geom.shell_thickness();
    if x <= r {
        0.0
    } else if x >= top {
        1.0
    } else {
        (cube_diff(x, r) / cube_diff(top, r)).clamp(0.0, 1.0)
    }
}

/// CDF of d_k², the adaptive integral of [`pdf_dk2`] from d_min².
pub fn cdf_dk2(y: f64, geom: &SystemGeometry) -> Result<f64> {
    let lo = geom.d_min() * geom.d_min();
    let hi = geom.d_max() * geom.d_max();
    if y <= lo {
        return Ok(0.0);
    }
    let y = y.min(hi);
    let mut pts = [lo, 0.0, 0.0, y];
    let mut n = 1;
    for b in geom.dk2_breakpoints() {
        if b > lo && b < y {
            pts[n] = b;
            n += 1;
        }
    }
    pts[n] = y;
    let v = integrate_breaks(|x| pdf_dk2(x, geom), &pts[..=n], 1e-12, 1e-10)?;
    Ok(v.clamp(0.0, 1.0))
}
