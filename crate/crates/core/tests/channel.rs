mod common;

use common::{binom_sigma, ecdf, ks_crit_1pct, ks_statistic};
use dualhop_core::channel::*;
use dualhop_core::defaults::{self, MODERATE_TURBULENCE, STRONG_TURBULENCE, WEAK_TURBULENCE};
use dualhop_core::specfun::meijer_g_fso_cdf;
use dualhop_core::units::km;
use proptest::prelude::*;
use rand::distr::Distribution;

fn with_turbulence((alpha, beta): (f64, f64)) -> FsoLinkParams {
    FsoLinkParams { alpha, beta, ..defaults::fso() }
}

/// Twenty grid points at the 2.5%…97.5% quantiles of a small pilot sample,
/// so the grid does not depend on the sample under test.
fn pilot_grid(pilot: &mut [f64]) -> Vec<f64> {
    pilot.sort_by(|a, b| a.total_cmp(b));
    (0..20).map(|i| pilot[((0.025 + 0.05 * i as f64) * pilot.len() as f64) as usize]).collect()
}

fn assert_matches_ecdf(samples: &mut [f64], cdf: impl Fn(f64) -> f64, label: &str) {
    let n = samples.len();
    let mut pilot = samples[..n / 100].to_vec();
    let samples = &samples[n / 100..];
    let n = samples.len();
    for x in pilot_grid(&mut pilot) {
        let p = cdf(x);
        let e = ecdf(samples, x);
        assert!((p - e).abs() <= 3.0 * binom_sigma(p, n), "{label}: x={x:e} analytic {p} empirical {e}");
    }
}

#[test]
fn fso_gain_support_and_mean() {
    let p = defaults::fso();
    let s = FsoGainSampler::new(&p).unwrap();
    let mut rng = common::rng(21);
    let n = 1_000_000;
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..n {
        let d = s.sample_parts(&mut rng);
        assert!(d.h >= 0.0 && d.h <= p.h_l * p.a0 * d.h_a * (1.0 + 1e-15));
        assert!(d.h_p <= p.a0);
        sum += d.h_a;
        sum2 += d.h_a * d.h_a;
    }
    let mean = sum / n as f64;
    let sd = (sum2 / n as f64 - mean * mean).sqrt();
    assert!((mean - 1.0).abs() <= 3.0 * sd / (n as f64).sqrt(), "mean h_a {mean}");
}

#[test]
fn fso_gain_cdf_matches_sampler_for_all_turbulence_levels() {
    for (i, t) in [WEAK_TURBULENCE, MODERATE_TURBULENCE, STRONG_TURBULENCE].into_iter().enumerate() {
        let p = with_turbulence(t);
        let s = FsoGainSampler::new(&p).unwrap();
        let mut rng = common::rng(2200 + i as u64);
        let mut h: Vec<f64> = (0..1_000_000).map(|_| s.sample(&mut rng)).collect();
        assert_matches_ecdf(&mut h, |x| cdf_fso_gain(x, &p).unwrap(), &format!("{t:?}"));
    }
}

#[test]
fn meijer_cdf_at_empirical_median_is_one_half() {
    let p = defaults::fso();
    let s = FsoGainSampler::new(&p).unwrap();
    let mut rng = common::rng(25);
    let n = 1_000_000;
    let mut h: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
    h.sort_by(|a, b| a.total_cmp(b));
    let median = h[n / 2];
    let v = meijer_g_fso_cdf(&p.meijer_params().unwrap(), p.gain_scale() * median).unwrap();
    assert!((v - 0.5).abs() <= 3.0 * binom_sigma(0.5, n), "F(median) = {v}");
}

#[test]
fn fso_snr_examples() {
    let p = defaults::fso();
    assert_eq!(fso_snr(0.0, km(36000.0), &p).unwrap(), 0.0);
    let a = fso_snr(0.3, km(36000.0), &p).unwrap();
    let b = fso_snr(0.3, km(72000.0), &p).unwrap();
    assert!((a / b - 16.0).abs() < 1e-12);
    assert!(fso_snr(0.3, 0.0, &p).is_err());
    assert!(fso_snr(0.31, km(36000.0), &p).unwrap() > a);
}

#[test]
fn conditional_snr_cdf_matches_sampled_paths() {
    let p = defaults::fso();
    let s = FsoGainSampler::new(&p).unwrap();
    for (i, d_km) in [35761.0, 35790.0, 35811.0].into_iter().enumerate() {
        let d = km(d_km);
        let mut rng = common::rng(30 + i as u64);
        let mut g: Vec<f64> = (0..1_000_000).map(|_| fso_snr(s.sample(&mut rng), d, &p).unwrap()).collect();
        assert_matches_ecdf(&mut g, |x| cdf_fso_snr_given_d(x, d * d, &p).unwrap(), &format!("d={d_km} km"));
    }
}

#[test]
fn conditional_snr_cdf_is_monotone() {
    let p = defaults::fso();
    let d2 = km(35800.0).powi(2);
    assert_eq!(cdf_fso_snr_given_d(0.0, d2, &p).unwrap(), 0.0);
    let mut prev = 0.0;
    for i in 0..50 {
        let x = 10f64.powf(-3.0 + 8.0 * i as f64 / 49.0);
        let v = cdf_fso_snr_given_d(x, d2, &p).unwrap();
        assert!(v >= prev && v <= 1.0);
        prev = v;
    }
}

#[test]
fn nakagami_moments() {
    let p = defaults::rf();
    let s = NakagamiSampler::new(&p).unwrap();
    let mut rng = common::rng(40);
    let n = 1_000_000;
    let g: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
    let mean = g.iter().sum::<f64>() / n as f64;
    let var = g.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let want_var = p.omega * p.omega / p.m;
    assert!((mean - p.omega).abs() <= 3.0 * (want_var / n as f64).sqrt(), "mean {mean}");
    // Fourth central moment of Gamma(m, Ω/m) is 3(m+2)Ω⁴/m³... bound the variance estimate loosely.
    let m4 = 3.0 * (p.m + 2.0) * p.omega.powi(4) / p.m.powi(3);
    assert!((var - want_var).abs() <= 3.0 * ((m4 - want_var * want_var) / n as f64).sqrt(), "var {var}");
}

#[test]
fn nakagami_m1_is_exponential() {
    let p = RfLinkParams { m: 1.0, omega: 2.0, ..defaults::rf() };
    let mut rng = common::rng(41);
    let n = 100_000;
    let mut g: Vec<f64> = (0..n).map(|_| sample_nakagami_gain(&p, &mut rng).unwrap()).collect();
    let ks = ks_statistic(&mut g, |x| 1.0 - (-x / p.omega).exp());
    assert!(ks <= ks_crit_1pct(n), "KS {ks}");
    for x in [0.0, 0.1, 1.0, 5.0] {
        assert!((cdf_nakagami(x, &p).unwrap() - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-14);
    }
}

#[test]
fn nakagami_cdf_matches_sampler() {
    let p = defaults::rf();
    let mut rng = common::rng(42);
    let s = NakagamiSampler::new(&p).unwrap();
    let mut g: Vec<f64> = (0..1_000_000).map(|_| s.sample(&mut rng)).collect();
    assert_matches_ecdf(&mut g, |x| cdf_nakagami(x, &p).unwrap(), "m=5");
}

#[test]
fn nakagami_cdf_examples() {
    let p = defaults::rf();
    assert_eq!(cdf_nakagami(0.0, &p).unwrap(), 0.0);
    assert!((1.0 - cdf_nakagami(1e3, &p).unwrap()) < 1e-15);
    // Finite-sum form 1 − Σ (m x/Ω)^i e^{−m x/Ω}/i!.
    let x: f64 = 0.8;
    let t = p.m * x / p.omega;
    let mut term = 1.0;
    let mut sum = 0.0;
    for i in 0..5 {
        if i > 0 {
            term *= t / i as f64;
        }
        sum += term;
    }
    assert!((cdf_nakagami(x, &p).unwrap() - (1.0 - sum * (-t).exp())).abs() < 1e-14);
    assert!(cdf_nakagami(1.0, &RfLinkParams { m: 2.5, ..p }).is_err());
}

#[test]
fn pathloss_examples() {
    let p = defaults::rf();
    assert_eq!(rf_pathloss(1.0, &p).unwrap(), 7018.0);
    assert!((rf_pathloss(10.0, &p).unwrap() - 100.0 * 7018.0).abs() < 1e-9);
    assert!(rf_pathloss(0.0, &p).is_err());
    let d = km(1.0);
    let want = p.p_r * p.omega / (p.rho * d * d * p.n_r);
    assert!((rf_snr(p.omega, d, &p).unwrap() / want - 1.0).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn analytic_cdfs_are_valid(alpha in 1.1f64..6.0, beta in 0.6f64..4.0, omega in 0.6f64..2.0, m in 1u32..9, lx in -4.0f64..2.0) {
        let p = FsoLinkParams { alpha, beta, omega, ..defaults::fso() };
        let r = RfLinkParams { m: f64::from(m), ..defaults::rf() };
        let x = 10f64.powf(lx);
        let (a, b) = (cdf_fso_gain(x, &p).unwrap(), cdf_fso_gain(1.1 * x, &p).unwrap());
        prop_assert!((0.0..=1.0).contains(&a) && b >= a - 1e-12);
        let (a, b) = (cdf_nakagami(x, &r).unwrap(), cdf_nakagami(1.1 * x, &r).unwrap());
        prop_assert!((0.0..=1.0).contains(&a) && b >= a);
    }
}
