mod common;

use common::{assert_close, ks_crit_1pct, ks_statistic};
use dualhop_core::defaults;
use dualhop_core::integrate::{integrate, integrate_breaks};
use dualhop_core::stochgeom::*;
use dualhop_core::units::{km, per_km3};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use std::f64::consts::PI;

#[test]
fn poisson_counts() {
    let mut rng = common::rng(1);
    for _ in 0..100 {
        assert_eq!(sample_count_hppp(0.0, &mut rng).unwrap(), 0);
    }
    assert!(sample_count_hppp(-1.0, &mut rng).is_err());
    let dep = defaults::deployment();
    let mean = dep.mean_uavs();
    assert_close(mean, 4.19, 1e-3);
    let n = 100_000;
    let xs: Vec<f64> = (0..n).map(|_| sample_count_hppp(mean, &mut rng).unwrap() as f64).collect();
    let m = xs.iter().sum::<f64>() / n as f64;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
    assert!((m - mean).abs() <= 3.0 * (mean / n as f64).sqrt(), "mean {m}");
    // Var of the sample variance of a Poisson is about (μ + 2μ²)/n.
    assert!((v - mean).abs() <= 3.0 * ((mean + 2.0 * mean * mean) / n as f64).sqrt(), "variance {v}");
}

#[test]
fn shell_cone_sampler_matches_radial_and_angular_laws() {
    let geom = defaults::geometry();
    let region = geom.region();
    let mut rng = common::rng(2);
    let n = 100_000;
    let pts: Vec<Point3> = (0..n).map(|_| sample_uniform_shell_cone(&region, &mut rng)).collect();
    let omc_max = region.one_minus_cos();
    for p in &pts {
        let omc = 1.0 - p.z / p.norm();
        assert!(omc <= omc_max * (1.0 + 1e-9));
        assert!(region.contains(*p));
    }
    let mut l: Vec<f64> = pts.iter().map(|p| p.norm()).collect();
    let d = ks_statistic(&mut l, |x| cdf_lk(x, &geom));
    assert!(d <= ks_crit_1pct(n), "KS {d}");
}

#[test]
fn dk2_samples_match_cdf() {
    let geom = defaults::geometry();
    let region = geom.region();
    let sat = geom.satellite();
    let mut rng = common::rng(3);
    let n = 20_000;
    let mut d2: Vec<f64> = (0..n).map(|_| sample_uniform_shell_cone(&region, &mut rng).dist_sq(sat)).collect();
    let d = ks_statistic(&mut d2, |x| cdf_dk2(x, &geom).unwrap());
    assert!(d <= ks_crit_1pct(n), "KS {d}");
}

#[test]
fn dk2_histogram_chi_square() {
    let geom = defaults::geometry();
    let region = geom.region();
    let sat = geom.satellite();
    let mut rng = common::rng(4);
    let n = 100_000;
    let bins = 40;
    let (lo, hi) = (geom.d_min().powi(2), geom.d_max().powi(2));
    let edges: Vec<f64> = (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect();
    let mut counts = vec![0usize; bins];
    for _ in 0..n {
        let x = sample_uniform_shell_cone(&region, &mut rng).dist_sq(sat);
        let b = (((x - lo) / (hi - lo)) * bins as f64).floor().clamp(0.0, (bins - 1) as f64) as usize;
        counts[b] += 1;
    }
    let mut chi2 = 0.0;
    let mut dof = 0;
    for b in 0..bins {
        let p = integrate(|x| pdf_dk2(x, &geom), edges[b], edges[b + 1], 1e-15, 1e-10).unwrap();
        let e = p * n as f64;
        if e >= 5.0 {
            chi2 += (counts[b] as f64 - e).powi(2) / e;
            dof += 1;
        }
    }
    // 1% upper quantile of χ² with k − 1 ≤ 39 degrees of freedom is at most 62.4.
    assert!(dof >= 20);
    assert!(chi2 <= 62.4, "chi2 {chi2} with {dof} bins");
}

#[test]
fn geometry_examples() {
    let geom = defaults::geometry();
    assert_close(geom.d_min(), km(35761.0), 1e-15);
    assert!(geom.d_min() < geom.d_max());
    let (lo, hi) = (geom.d_min().powi(2), geom.d_max().powi(2));
    let mut pts = vec![lo];
    pts.extend(geom.dk2_breakpoints());
    pts.push(hi);
    let mass = integrate_breaks(|x| pdf_dk2(x, &geom), &pts, 1e-15, 1e-12).unwrap();
    assert!((mass - 1.0).abs() <= 1e-6, "mass {mass}");
    assert_eq!(pdf_dk2(lo * 0.99, &geom), 0.0);
    assert_eq!(pdf_dk2(hi * 1.01, &geom), 0.0);
    assert_eq!(cdf_lk(geom.earth_radius(), &geom), 0.0);
    assert_eq!(cdf_lk(geom.earth_radius() + geom.shell_thickness(), &geom), 1.0);
    assert!((cdf_dk2(hi, &geom).unwrap() - 1.0).abs() <= 1e-6);
}

#[test]
fn full_shell_is_symmetric() {
    let region = ShellCone::new(km(1.0), km(2.0), PI).unwrap();
    let mut rng = common::rng(5);
    let n = 100_000;
    let cos: Vec<f64> = (0..n)
        .map(|_| {
            let p = sample_uniform_shell_cone(&region, &mut rng);
            p.z / p.norm()
        })
        .collect();
    let mean = cos.iter().sum::<f64>() / n as f64;
    // cos ξ is uniform on [−1, 1], variance 1/3.
    assert!(mean.abs() <= 3.0 * (1.0 / (3.0 * n as f64)).sqrt(), "mean {mean}");
}

#[test]
fn mhcpp_intensity_examples() {
    let v = mhcpp_intensity(per_km3(0.001), km(2.0));
    assert_close(v / per_km3(1.0), 9.834e-4, 1e-4);
    assert_close(mhcpp_intensity(1e-30, 1.0) / 1e-30, 1.0, 1e-12);
    let ball = 4.0 / 3.0 * PI;
    assert_close(mhcpp_intensity(1e6, 1.0), 1.0 / ball, 1e-12);
    assert_close(mhcpp_intensity(f64::INFINITY, 1.0), 1.0 / ball, 1e-12);
    assert_eq!(mhcpp_intensity(0.0, 1.0), 0.0);
}

#[test]
fn thinning_examples() {
    let mut rng = common::rng(6);
    let far = PointSample {
        positions: (0..10).map(|i| Point3::new(10.0 * i as f64, 0.0, 0.0)).collect(),
        marks: None,
        process: ProcessKind::Hppp,
    };
    assert_eq!(thin_mhcpp(&far, 9.0, &mut rng).unwrap().len(), 10);
    let pair = [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0)];
    assert_eq!(retain_hard_core(&pair, &[0.7, 0.2], 2.0), vec![false, true]);
    assert_eq!(retain_hard_core(&pair, &[0.1, 0.2], 2.0), vec![true, false]);
    let marked = PointSample { marks: Some(vec![0.5; 10]), ..far.clone() };
    assert!(thin_mhcpp(&marked, 9.0, &mut rng).is_err());
    let hard = PointSample { process: ProcessKind::Mhcpp, ..far };
    assert!(thin_mhcpp(&hard, 9.0, &mut rng).is_err());
}

#[test]
fn mhcpp_retention_matches_intensity_relation() {
    let geom = defaults::geometry();
    let region = geom.region();
    let lambda_p = per_km3(0.001);
    for (d_min_km, reps) in [(0.1, 300), (1.0, 300), (10.0, 2000)] {
        let d_min = km(d_min_km);
        let mut rng = common::rng(7);
        let (mut cand, mut kept) = (0usize, 0usize);
        let mut counts = Vec::with_capacity(reps);
        for _ in 0..reps {
            let r = sample_mhcpp(&region, lambda_p, d_min, EdgeMode::Guarded, &mut rng).unwrap();
            if let Some(min) = r.retained.min_pairwise_distance() {
                assert!(min >= d_min);
            }
            assert!(r.retained.positions.iter().all(|p| region.contains(*p)));
            cand += r.candidates_in_region;
            kept += r.retained.len();
            counts.push(r.retained.len() as f64);
        }
        let frac = kept as f64 / cand as f64;
        let want = mhcpp_intensity(lambda_p, d_min) / lambda_p;
        assert!((frac / want - 1.0).abs() <= 0.02, "D_min {d_min_km} km: {frac} vs {want}");
        let n = counts.len() as f64;
        let mean = counts.iter().sum::<f64>() / n;
        let sd = (counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        let expect = mhcpp_intensity(lambda_p, d_min) * region.volume();
        assert!((mean - expect).abs() <= 3.0 * sd / n.sqrt(), "mean count {mean} vs {expect}");
    }
}

#[test]
fn thinning_preserves_distance_laws() {
    let geom = defaults::geometry();
    let region = geom.region();
    let sat = geom.satellite();
    for d_min_km in [0.1, 1.0, 10.0] {
        let mut rng = common::rng(8);
        let (mut l, mut d2) = (Vec::new(), Vec::new());
        while l.len() < 20_000 {
            let r = sample_mhcpp(&region, per_km3(0.001), km(d_min_km), EdgeMode::Guarded, &mut rng).unwrap();
            for p in &r.retained.positions {
                l.push(p.norm());
                d2.push(p.dist_sq(sat));
            }
        }
        let n = l.len();
        let dl = ks_statistic(&mut l, |x| cdf_lk(x, &geom));
        let dd = ks_statistic(&mut d2, |x| cdf_dk2(x, &geom).unwrap());
        assert!(dl <= ks_crit_1pct(n), "D_min {d_min_km}: l_k KS {dl}");
        assert!(dd <= ks_crit_1pct(n), "D_min {d_min_km}: d_k^2 KS {dd}");
    }
}

#[test]
fn thinning_is_permutation_invariant() {
    let mut rng = common::rng(9);
    let n = 400;
    let pos: Vec<Point3> = (0..n)
        .map(|_| Point3::new(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)))
        .collect();
    let marks: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    let keep = retain_hard_core(&pos, &marks, 1.3);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let p2: Vec<Point3> = idx.iter().map(|&i| pos[i]).collect();
    let m2: Vec<f64> = idx.iter().map(|&i| marks[i]).collect();
    let keep2 = retain_hard_core(&p2, &m2, 1.3);
    for (j, &i) in idx.iter().enumerate() {
        assert_eq!(keep[i], keep2[j]);
    }
}

#[test]
fn serving_ball_laws() {
    let d = km(1.0);
    let mass = integrate(|x| pdf_dkj(x, d), 0.0, d, 0.0, 1e-13).unwrap();
    assert_close(mass, 1.0, 1e-12);
    assert_close(pdf_dkj(d, d), 3.0 / d, 1e-15);
    assert_eq!(pdf_dkj(1.1 * d, d), 0.0);
    let c = Point3::new(3.0, -2.0, 7.0);
    let mut rng = common::rng(10);
    let n = 100_000;
    let mut r: Vec<f64> = (0..n).map(|_| sample_uniform_ball(c, d, &mut rng).unwrap().dist(c)).collect();
    assert!(r.iter().all(|&x| x <= d));
    let mean = r.iter().sum::<f64>() / n as f64;
    // Var(r) = 3D²/5 − 9D²/16.
    let sd = d * (3.0 / 5.0 - 9.0 / 16.0f64).sqrt();
    assert!((mean - 0.75 * d).abs() <= 3.0 * sd / (n as f64).sqrt(), "mean {mean}");
    let ks = ks_statistic(&mut r, |x| (x / d).powi(3));
    assert!(ks <= ks_crit_1pct(n));
    assert!(sample_uniform_ball(c, 0.0, &mut rng).is_err());
}

fn cdf_dji1(x: f64, d: f64, dep: &DeploymentParams) -> f64 {
    let lo = (dep.d_min - d).powi(2);
    if x <= lo {
        return 0.0;
    }
    let pts: Vec<f64> =
        [lo, (dep.d_min + d).powi(2), (dep.d_max - d).powi(2), x].into_iter().filter(|&p| p <= x).collect();
    integrate_breaks(|y| pdf_dji1_given_dkj(y, d, dep).unwrap(), &pts, 1e-16, 1e-11).unwrap()
}

#[test]
fn interferer_distance_density() {
    let dep = defaults::deployment();
    for d in [1.0, 250.0, km(1.0)] {
        let lo = (dep.d_min - d).powi(2);
        let hi = (dep.d_max + d).powi(2);
        let pts = [lo, (dep.d_min + d).powi(2), (dep.d_max - d).powi(2), hi];
        let mass = integrate_breaks(|y| pdf_dji1_given_dkj(y, d, &dep).unwrap(), &pts, 1e-16, 1e-12).unwrap();
        assert!((mass - 1.0).abs() <= 1e-6, "d {d}: mass {mass}");
        let x = km(10.0).powi(2);
        assert_close(pdf_dji1_given_dkj(x, d, &dep).unwrap(), 2.0 * PI * x.sqrt() / dep.interference_volume(), 1e-12);
    }
    assert!(pdf_dji1_given_dkj(1.0, 0.0, &dep).is_err());

    let d = 600.0;
    let mut rng = common::rng(12);
    let n = 20_000;
    let uav = Point3::new(d, 0.0, 0.0);
    let mut x: Vec<f64> = (0..n)
        .map(|_| sample_uniform_shell(Point3::new(0.0, 0.0, 0.0), dep.d_min, dep.d_max, &mut rng).dist_sq(uav))
        .collect();
    let ks = ks_statistic(&mut x, |v| cdf_dji1(v, d, &dep));
    assert!(ks <= ks_crit_1pct(n), "KS {ks}");
}

#[test]
fn deployment_validation() {
    let dep = defaults::deployment();
    assert!(dep.validate().unwrap().is_empty());
    let shallow = DeploymentParams { d_max: km(6.0), ..dep };
    assert_eq!(shallow.validate().unwrap(), vec![DeploymentWarning::ShallowSensitivityShell]);
    assert!(DeploymentParams { serving_radius: km(1.5), ..dep }.validate().is_err());
    assert!(DeploymentParams { d_max: km(3.0), ..dep }.validate().is_err());
    assert!(dep.lambda_ch() <= dep.lambda_p);
}

#[test]
fn same_seed_same_sample() {
    let region = defaults::geometry().region();
    let a = sample_hppp(&region, per_km3(0.001), &mut common::rng(77)).unwrap();
    let b = sample_hppp(&region, per_km3(0.001), &mut common::rng(77)).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mhcpp_respects_hard_core(seed in any::<u64>(), d_min_km in 0.5f64..12.0) {
        let region = defaults::geometry().region();
        let mut rng = common::rng(seed);
        let r = sample_mhcpp(&region, per_km3(0.002), km(d_min_km), EdgeMode::Guarded, &mut rng).unwrap();
        if let Some(min) = r.retained.min_pairwise_distance() {
            prop_assert!(min >= km(d_min_km));
        }
        let c = sample_mhcpp(&region, per_km3(0.002), km(d_min_km), EdgeMode::Clipped, &mut rng).unwrap();
        if let Some(min) = c.retained.min_pairwise_distance() {
            prop_assert!(min >= km(d_min_km));
        }
    }

    #[test]
    fn densities_are_nonnegative(t in 0.0f64..1.0, d in 1.0f64..1000.0) {
        let geom = defaults::geometry();
        let (lo, hi) = (geom.d_min().powi(2), geom.d_max().powi(2));
        prop_assert!(pdf_dk2(lo + t * (hi - lo), &geom) >= 0.0);
        let dep = defaults::deployment();
        let (a, b) = ((dep.d_min - d).powi(2), (dep.d_max + d).powi(2));
        prop_assert!(pdf_dji1_given_dkj(a + t * (b - a), d, &dep).unwrap() >= 0.0);
    }
}
