use alloc::vec;
use alloc::vec::Vec;

use crate::error::{ensure, Result};

/// Table of partial Bell polynomials `t[n][k] = B_{n,k}(x₁, …)` for 0 ≤ k ≤ n ≤ `n_max`.
///
/// `x[0]` holds x₁. Needs at least `n_max` entries.
pub fn bell_triangle(n_max: usize, x: &[f64]) -> Result<Vec<Vec<f64>>> {
    ensure(x.len() >= n_max, "bell_triangle needs n_max arguments")?;
    let mut t: Vec<Vec<f64>> = (0..=n_max).map(|n| vec![0.0; n + 1]).collect();
    t[0][0] = 1.0;
    for n in 1..=n_max {
        for k in 1..=n {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for j in 1..=(n - k + 1) {
                acc += binom * x[j - 1] * t[n - j][k - 1];
                binom *= (n - j) as f64 / j as f64;
            }
            t[n][k] = acc;
        }
    }
    Ok(t)
}

/// Partial (incomplete) Bell polynomial B_{n,k}(x₁, …, x_{n−k+1}).
pub fn partial_bell(n: usize, k: usize, x: &[f64]) -> Result<f64> {
    ensure(k >= 1 && k <= n, "partial_bell needs 1 <= k <= n")?;
    ensure(x.len() > n - k, "partial_bell needs n-k+1 arguments")?;
    let mut padded = vec![0.0; n];
    padded[..=(n - k)].copy_from_slice(&x[..=(n - k)]);
    Ok(bell_triangle(n, &padded)?[n][k])
}

/// Complete Bell polynomial Σ_{k=1}^{n} B_{n,k} read from a triangle; 1 for n = 0.
pub fn complete_bell(triangle: &[Vec<f64>], n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        triangle[n][1..].iter().sum()
    }
}

/// Falling product m(m−1)…(m−q+1); 1 for q = 0, saturating at `u128::MAX`.
///
/// Note that the derivative formulas of the interference Laplace transform
/// need the rising product instead, see [`rising_product`].
pub fn falling_product(m: u64, q: u64) -> u128 {
    if q > m {
        return 0;
    }
    (0..q).fold(1u128, |acc, k| acc.saturating_mul(u128::from(m - k)))
}

/// Rising factorial x(x+1)…(x+q−1); 1 for q = 0.
pub fn rising_product(x: f64, q: u32) -> f64 {
    (0..q).fold(1.0, |acc, k| acc * (x + f64::from(k)))
}
