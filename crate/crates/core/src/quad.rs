//! Gauss-Legendre quadrature on the open interval (0, 1).
//!
//! The operator integrals all take the form int_0^1 phi(t) dt where phi
//! extends analytically to a neighborhood of [0, 1], so Gauss-Legendre
//! converges geometrically and an open rule (no endpoint nodes) sidesteps the
//! removable singularity that the integrands carry at t = 0.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Legendre rule mapped to (0, 1).
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Default node count used by the operator quadrature routines.
pub const DEFAULT_NODES: usize = 64;

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial
    /// P_n, starting from the Chebyshev-based root estimates.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let step = p / d;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            // Weight on [-1, 1]; the map to (0, 1) halves it.
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            weights[i] = 0.5 * w;
        }
        nodes.reverse();
        weights.reverse();
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in ascending order, all strictly inside (0, 1).
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximates int_0^1 f(t) dt.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(*t) * *w;
        }
        acc
    }
}

/// Evaluates (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_interior_and_symmetric() {
        for n in [1, 2, 8, 64, 128] {
            let rule = GaussLegendre::new(n);
            assert_eq!(rule.len(), n);
            for (t, w) in rule.nodes().iter().zip(rule.weights()) {
                assert!(*t > 0.0 && *t < 1.0);
                assert!(*w > 0.0);
            }
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-14, "weights sum to {total}");
            for i in 0..n / 2 {
                let mirrored = 1.0 - rule.nodes()[n - 1 - i];
                assert!((rule.nodes()[i] - mirrored).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn integrates_monomials_exactly() {
        // An n-point rule is exact through degree 2n - 1.
        let rule = GaussLegendre::new(8);
        for k in 0..=15u32 {
            let got = rule.integrate(|t| Complex64::new(t.powi(k as i32), 0.0));
            let want = 1.0 / (k as f64 + 1.0);
            assert!(
                (got.re - want).abs() < 1e-14 && got.im == 0.0,
                "degree {k}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn integrates_log_kernel_profile() {
        // int_0^1 log(1/(1 - t w)) / t dt = dilogarithm Li_2(w); check the
        // classical value Li_2(1/2) = pi^2/12 - log(2)^2/2.
        let rule = GaussLegendre::new(DEFAULT_NODES);
        let w = 0.5;
        let got = rule.integrate(|t| Complex64::new(-(1.0 - t * w).ln() / t, 0.0));
        let want = std::f64::consts::PI.powi(2) / 12.0 - 0.5 * std::f64::consts::LN_2.powi(2);
        assert!((got.re - want).abs() < 1e-13);
    }

    #[test]
    fn converges_on_analytic_integrand() {
        let exact = std::f64::consts::E - 1.0;
        let coarse = GaussLegendre::new(4).integrate(|t| Complex64::new(t.exp(), 0.0));
        let fine = GaussLegendre::new(16).integrate(|t| Complex64::new(t.exp(), 0.0));
        assert!((fine.re - exact).abs() < 1e-15);
        assert!((fine.re - exact).abs() <= (coarse.re - exact).abs());
    }
}
