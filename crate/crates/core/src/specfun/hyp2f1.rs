use super::sum::KahanSum;
use crate::error::{ensure, Error, Result};

const MAX_TERMS: usize = 5_000_000;

/// Gauss hypergeometric ₂F₁(a, b; c; z) for z ≤ 0.
///
/// Uses the Pfaff transformation onto z/(z−1) ∈ [0, 1) when that series
/// converges quickly. For the `c = b + 1` family far out on the negative axis
/// the Euler integral is split into two incomplete-beta pieces; otherwise the
/// 1/z connection formula is used when b − a is not an integer.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    ensure(a.is_finite() && b.is_finite() && c.is_finite(), "2F1 parameters must be finite")?;
    ensure(z <= 0.0 && z.is_finite(), "2F1 is implemented for finite z <= 0")?;
    ensure(!is_nonpositive_integer(c), "2F1 undefined for c a non-positive integer")?;
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z < -1.0 {
        if near(c, b + 1.0) && b > 0.0 {
            return beta_split(a, b, -z);
        }
        if near(c, a + 1.0) && a > 0.0 {
            return beta_split(b, a, -z);
        }
    }
    let w = z / (z - 1.0);
    let (p, q) = if is_nonpositive_integer(b) || is_nonpositive_integer(c - a) { (b, a) } else { (a, b) };
    if w <= 0.9 {
        return Ok(libm::pow(1.0 - z, -p) * series(p, c - q, c, w)?);
    }
    let d = b - a;
    if (d - libm::round(d)).abs() > 0.05 {
        return connection(a, b, c, z);
    }
    Ok(libm::pow(1.0 - z, -p) * series(p, c - q, c, w)?)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(1.0)
}

/// Defining power series Σ (a)_k (b)_k / ((c)_k k!) x^k for |x| < 1.
fn series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut sum = KahanSum::new();
    let mut term = 1.0;
    sum.add(term);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        term *= ratio * x;
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        if (ratio * x).abs() < 1.0 && term.abs() <= 1e-16 * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence("2F1 power series"))
}

fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

/// Connection formula onto 1/z, valid when b − a is not an integer.
fn connection(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let gc = libm::tgamma(c);
    let y = -z;
    let t1 = gc * libm::tgamma(b - a) * recip_gamma(b) * recip_gamma(c - a);
    let t2 = gc * libm::tgamma(a - b) * recip_gamma(a) * recip_gamma(c - b);
    let mut out = 0.0;
    if t1 != 0.0 {
        out += t1 * libm::pow(y, -a) * series(a, a - c + 1.0, a - b + 1.0, 1.0 / z)?;
    }
    if t2 != 0.0 {
        out += t2 * libm::pow(y, -b) * series(b, b - c + 1.0, b - a + 1.0, 1.0 / z)?;
    }
    Ok(out)
}

/// ₂F₁(a, b; b+1; −y) for y > 1 and b > 0.
///
/// Writes the value as b·y^{−b}·∫₀^U u^{b−1}(1−u)^{r−1} du with r = a − b and
/// U = y/(1+y), splitting the integral at 1 − v₀ so that both endpoint
/// expansions converge without heavy cancellation.
fn beta_split(a: f64, b: f64, y: f64) -> Result<f64> {
    let r = a - b;
    let upper = y / (1.0 + y);
    let eps = 1.0 / (1.0 + y);
    let v0 = if b > 2.0 { 1.0 / (b - 1.0) } else { 0.5 };
    let u0 = 1.0 - v0;
    let j = if upper <= u0 { left_piece(b, r, upper)? } else { left_piece(b, r, u0)? + right_piece(b, r, eps, v0)? };
    Ok(libm::exp(libm::log(b) - b * libm::log(y)) * j)
}

/// ∫₀ˣ u^{b−1}(1−u)^{r−1} du via the binomial series of (1−u)^{r−1}.
fn left_piece(b: f64, r: f64, x: f64) -> Result<f64> {
    let mut sum = KahanSum::new();
    let mut coef = 1.0;
    let mut xp = libm::pow(x, b);
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        let term = coef * xp / (b + jf);
        sum.add(term);
        if j > 2 && (jf + 1.0 - r).abs() * x < jf + 1.0 && term.abs() <= 1e-17 * sum.value().abs() {
            return Ok(sum.value());
        }
        coef *= (1.0 - r + jf) / (jf + 1.0);
        xp *= x;
        if coef == 0.0 {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence("2F1 incomplete-beta left series"))
}

/// ∫_ε^{v₀} (1−v)^{b−1} v^{r−1} dv via the binomial series of (1−v)^{b−1}.
fn right_piece(b: f64, r: f64, eps: f64, v0: f64) -> Result<f64> {
    let ell = libm::log(v0 / eps);
    let mut sum = KahanSum::new();
    let mut coef = 1.0;
    for j in 0..MAX_TERMS {
        let p = j as f64 + r;
        let e = if (p * ell).abs() < 1e-300 {
            ell
        } else if p > 0.0 {
            -libm::pow(v0, p) * libm::expm1(-p * ell) / p
        } else {
            libm::pow(eps, p) * libm::expm1(p * ell) / p
        };
        let term = coef * e;
        sum.add(term);
        if j > 2 && term.abs() <= 1e-17 * sum.value().abs() {
            return Ok(sum.value());
        }
        coef *= (1.0 - b + j as f64) / (j as f64 + 1.0);
        if coef == 0.0 {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence("2F1 incomplete-beta right series"))
}
