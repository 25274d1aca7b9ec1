use alloc::vec::Vec;

use core::f64::consts::PI;

/// M-node Chebyshev–Gauss rule, t_p = cos((2p−1)π/(2M)).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
}

/// Builds the M-node Chebyshev–Gauss rule. `m = 0` is treated as 1.
pub fn cheb_gauss_nodes(m: usize) -> QuadratureRule {
    let m = m.max(1);
    let nodes = (1..=m).map(|p| libm::cos((2 * p - 1) as f64 * PI / (2 * m) as f64)).collect();
    QuadratureRule { nodes }
}

impl QuadratureRule {
    /// Number of nodes M.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Abscissas, strictly decreasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Common weight π/M.
    pub fn weight(&self) -> f64 {
        PI / self.nodes.len() as f64
    }

    /// ∫₋₁¹ f(t)/√(1−t²) dt.
    pub fn integrate_weighted(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.weight() * self.nodes.iter().map(|&t| f(t)).sum::<f64>()
    }

    /// ∫₋₁¹ g(t) dt, carrying the √(1−t²) factor at each node.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.weight() * self.nodes.iter().map(|&t| g(t) * libm::sqrt(1.0 - t * t)).sum::<f64>()
    }

    /// ∫ₐᵇ g(x) dx through the affine map onto [−1, 1].
    pub fn integrate_on(&self, a: f64, b: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self.integrate(|t| g(half * t + mid))
    }
}
