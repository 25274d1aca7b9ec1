use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::geometry::ShellCone;
use super::point::Point3;
use crate::error::{ensure, Error, Result};

/// Which process a [`PointSample`] was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessKind {
    /// Homogeneous Poisson point process.
    Hppp,
    /// Matérn hard-core process of type II.
    Mhcpp,
}

/// One realization of a point process.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSample {
    /// Point positions (m).
    pub positions: Vec<Point3>,
    /// Thinning marks in [0, 1), one per point, when assigned.
    pub marks: Option<Vec<f64>>,
    /// Generating process.
    pub process: ProcessKind,
}

impl PointSample {
    /// Number of points.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    /// True when there are no points.
    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Smallest distance between two distinct points, `None` below two points.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let p = &self.positions;
        let mut best: Option<f64> = None;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                let d = p[i].dist_sq(p[j]);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best.map(libm::sqrt)
    }
}

/// How candidates near the region boundary are treated when thinning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeMode {
    /// Candidates only inside the region; boundary points see fewer competitors.
    Clipped,
    /// Candidates also in a guard band of width D_min; only points inside the
    /// region are reported, so retention is unbiased at the boundary.
    #[default]
    Guarded,
}

/// Result of [`sample_mhcpp`].
#[derive(Debug, Clone, PartialEq)]
pub struct MhcppRealization {
    /// Candidate points that fell inside the region.
    pub candidates_in_region: usize,
    /// Retained points inside the region.
    pub retained: PointSample,
}

/// Poisson count with the given mean.
pub fn sample_count_hppp<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    ensure(mean >= 0.0 && mean.is_finite(), "Poisson mean must be finite and nonnegative")?;
    if mean == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean).map_err(|_| Error::Domain("Poisson mean out of range"))?;
    Ok(dist.sample(rng) as u64)
}

/// Point uniform in a spherical-cone shell.
pub fn sample_uniform_shell_cone<R: Rng + ?Sized>(region: &ShellCone, rng: &mut R) -> Point3 {
    let r = radius_in_shell(region.inner(), region.outer(), rng.random());
    let omc = rng.random::<f64>() * region.one_minus_cos();
    let sin_xi = libm::sqrt(omc * (2.0 - omc));
    let phi = 2.0 * PI * rng.random::<f64>();
    Point3::new(r * sin_xi * libm::cos(phi), r * sin_xi * libm::sin(phi), r * (1.0 - omc))
}

/// Point uniform in the ball of the given radius around `center`.
pub fn sample_uniform_ball<R: Rng + ?Sized>(center: Point3, radius: f64, rng: &mut R) -> Result<Point3> {
    ensure(radius > 0.0 && radius.is_finite(), "ball radius must be positive")?;
    Ok(sample_uniform_shell(center, 0.0, radius, rng))
}

/// Point uniform in the spherical shell inner ≤ |p − center| ≤ outer.
pub fn sample_uniform_shell<R: Rng + ?Sized>(center: Point3, inner: f64, outer: f64, rng: &mut R) -> Point3 {
    let r = radius_in_shell(inner, outer, rng.random());
    center + unit_vector(rng) * r
}

fn radius_in_shell(inner: f64, outer: f64, u: f64) -> f64 {
    let i3 = inner * inner * inner;
    libm::cbrt(i3 + u * (outer * outer * outer - i3))
}

fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Point3 {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.random::<f64>();
    let s = libm::sqrt((1.0 - z) * (1.0 + z));
    Point3::new(s * libm::cos(phi), s * libm::sin(phi), z)
}

/// Poisson process of intensity `lambda` inside a spherical-cone shell.
pub fn sample_hppp<R: Rng + ?Sized>(region: &ShellCone, lambda: f64, rng: &mut R) -> Result<PointSample> {
    let n = sample_count_hppp(lambda * region.volume(), rng)?;
    let positions = (0..n).map(|_| sample_uniform_shell_cone(region, rng)).collect();
    Ok(PointSample { positions, marks: None, process: ProcessKind::Hppp })
}

/// Poisson process of intensity `lambda` inside an axis-aligned box.
pub fn sample_hppp_box<R: Rng + ?Sized>(lo: Point3, hi: Point3, lambda: f64, rng: &mut R) -> Result<PointSample> {
    let ext = hi - lo;
    ensure(ext.x >= 0.0 && ext.y >= 0.0 && ext.z >= 0.0, "box corners out of order")?;
    let n = sample_count_hppp(lambda * ext.x * ext.y * ext.z, rng)?;
    let positions = (0..n)
        .map(|_| {
            let (a, b, c): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
            lo + Point3::new(a * ext.x, b * ext.y, c * ext.z)
        })
        .collect();
    Ok(PointSample { positions, marks: None, process: ProcessKind::Hppp })
}

/// Type-II thinning: each point keeps itself iff its mark is strictly the
/// smallest among all points closer than `d_min`.
pub fn retain_hard_core(positions: &[Point3], marks: &[f64], d_min: f64) -> Vec<bool> {
    let cell =
        |p: Point3| (libm::floor(p.x / d_min) as i64, libm::floor(p.y / d_min) as i64, libm::floor(p.z / d_min) as i64);
    let mut grid: BTreeMap<(i64, i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, &p) in positions.iter().enumerate() {
        grid.entry(cell(p)).or_default().push(i);
    }
    let d2 = d_min * d_min;
    positions
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (cx, cy, cz) = cell(p);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        let Some(bucket) = grid.get(&(cx + dx, cy + dy, cz + dz)) else { continue };
                        for &j in bucket {
                            if j != i && p.dist_sq(positions[j]) < d2 && marks[j] <= marks[i] {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        })
        .collect()
}

/// Assigns uniform marks to an unmarked Poisson sample and applies type-II thinning.
pub fn thin_mhcpp<R: Rng + ?Sized>(points: &PointSample, d_min: f64, rng: &mut R) -> Result<PointSample> {
    ensure(points.process == ProcessKind::Hppp, "thinning expects a Poisson sample")?;
    ensure(points.marks.is_none(), "thinning expects an unmarked sample")?;
    ensure(d_min > 0.0 && d_min.is_finite(), "hard-core distance must be positive")?;
    let marks: Vec<f64> = (0..points.len()).map(|_| rng.random()).collect();
    let keep = retain_hard_core(&points.positions, &marks, d_min);
    let (mut pos, mut mk) = (Vec::new(), Vec::new());
    for (i, k) in keep.iter().enumerate() {
        if *k {
            pos.push(points.positions[i]);
            mk.push(marks[i]);
        }
    }
    Ok(PointSample { positions: pos, marks: Some(mk), process: ProcessKind::Mhcpp })
}

/// One hard-core realization restricted to `region`.
pub fn sample_mhcpp<R: Rng + ?Sized>(
    region: &ShellCone,
    lambda_p: f64,
    d_min: f64,
    edge: EdgeMode,
    rng: &mut R,
) -> Result<MhcppRealization> {
    let candidates = match edge {
        EdgeMode::Clipped => sample_hppp(region, lambda_p, rng)?,
        EdgeMode::Guarded => {
            let (lo, hi) = region.bounding_box();
            let g = Point3::new(d_min, d_min, d_min);
            sample_hppp_box(lo - g, hi + g, lambda_p, rng)?
        }
    };
    let candidates_in_region = candidates.positions.iter().filter(|p| region.contains(**p)).count();
    let mut thinned = thin_mhcpp(&candidates, d_min, rng)?;
    if edge == EdgeMode::Guarded {
        let marks = thinned.marks.take().unwrap_or_default();
        let (mut pos, mut mk) = (Vec::new(), Vec::new());
        for (p, m) in thinned.positions.iter().zip(marks) {
            if region.contains(*p) {
                pos.push(*p);
                mk.push(m);
            }
        }
        thinned = PointSample { positions: pos, marks: Some(mk), process: ProcessKind::Mhcpp };
    }
    Ok(MhcppRealization { candidates_in_region, retained: thinned })
}
