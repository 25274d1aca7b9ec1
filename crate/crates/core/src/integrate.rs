//! Globally adaptive Gauss–Kronrod (7/15) integration.

use alloc::vec::Vec;

use crate::error::{ensure, Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_INTERVALS: usize = 4000;

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    floor: f64,
}

fn kronrod(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let value = res_k * half;
    res_asc *= h;
    res_abs *= h;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * libm::pow((200.0 * error / res_asc).min(1.0), 1.5);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    Piece { a, b, value, error: error.max(floor), floor }
}

/// ∫ₐᵇ f over the sub-intervals delimited by `points` (sorted, first and last are the limits).
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`
/// or has reached the rounding floor of the rule.
pub fn integrate_breaks(mut f: impl FnMut(f64) -> f64, points: &[f64], abs_tol: f64, rel_tol: f64) -> Result<f64> {
    ensure(points.len() >= 2, "integration needs two limits")?;
    ensure(points.iter().all(|p| p.is_finite()), "integration limits must be finite")?;
    let mut pieces: Vec<Piece> =
        points.windows(2).filter(|w| w[1] != w[0]).map(|w| kronrod(&mut f, w[0], w[1])).collect();
    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let err: f64 = pieces.iter().map(|p| p.error).sum();
        let floor: f64 = pieces.iter().map(|p| p.floor).sum();
        if err <= abs_tol.max(rel_tol * total.abs()).max(2.0 * floor) || pieces.is_empty() {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Numeric { what: "adaptive quadrature error estimate", value: err });
        }
        let (worst, _) =
            pieces.iter().enumerate().fold((0, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            return Err(Error::Numeric { what: "adaptive quadrature interval underflow", value: err });
        }
        pieces.push(kronrod(&mut f, p.a, mid));
        pieces.push(kronrod(&mut f, mid, p.b));
    }
}

/// ∫ₐᵇ f with adaptive bisection.
pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    integrate_breaks(f, &[a, b], abs_tol, rel_tol)
}
