use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ensure(x > 0.0 && x.is_finite(), "ln_gamma needs a finite positive argument")?;
    Ok(libm::lgamma(x))
}

/// Γ(x) for any real x that is not a pole (non-positive integer).
pub fn gamma(x: f64) -> Result<f64> {
    ensure(!(x <= 0.0 && x == libm::floor(x)), "gamma has poles at non-positive integers")?;
    Ok(libm::tgamma(x))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch-free ln Γ(z) for complex z with Re z > 0.
///
/// The imaginary part is only defined modulo 2π, which is all that is needed
/// when the value is exponentiated.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.5 {
        shift -= z.ln();
        z += 1.0;
    }
    let z1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (z1 + k as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    shift + LN_SQRT_2PI + (z1 + 0.5) * t.ln() - t + acc.ln()
}

/// Lower incomplete gamma γ(s, x) = ∫₀ˣ t^{s−1} e^{−t} dt.
pub fn lower_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    ensure(s > 0.0 && s.is_finite(), "lower_incomplete_gamma needs s > 0")?;
    ensure(x >= 0.0 && !x.is_nan(), "lower_incomplete_gamma needs x >= 0")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(libm::tgamma(s));
    }
    let ln_pref = s * libm::log(x) - x;
    if x < s + 1.0 {
        Ok(libm::exp(ln_pref) * series(s, x)?)
    } else {
        Ok(libm::tgamma(s) - libm::exp(ln_pref) * upper_fraction(s, x)?)
    }
}

/// Regularized lower incomplete gamma P(s, x) = γ(s, x)/Γ(s).
pub fn regularized_lower_gamma(s: f64, x: f64) -> Result<f64> {
    ensure(s > 0.0 && s.is_finite(), "regularized_lower_gamma needs s > 0")?;
    ensure(x >= 0.0 && !x.is_nan(), "regularized_lower_gamma needs x >= 0")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let ln_pref = s * libm::log(x) - x - libm::lgamma(s);
    if x < s + 1.0 {
        Ok(libm::exp(ln_pref) * series(s, x)?)
    } else {
        Ok(1.0 - libm::exp(ln_pref) * upper_fraction(s, x)?)
    }
}

/// Σ_{n≥0} xⁿ / (s(s+1)…(s+n)).
fn series(s: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut a = s;
    for _ in 0..10_000 {
        a += 1.0;
        term *= x / a;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence("incomplete gamma series"))
}

/// Continued fraction for e^{x} x^{−s} Γ(s, x) (modified Lentz).
fn upper_fraction(s: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Convergence("incomplete gamma continued fraction"))
}
