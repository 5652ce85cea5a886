//! Gauss quadrature rules via the Golub–Welsch eigenvalue method.

use nalgebra::DMatrix;

use crate::process::linalg::real_symmetric_eigen;
use crate::{Error, Result};

/// Nodes and weights of a one-dimensional rule.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Rule for ∫_a^b from a rule on [−1, 1].
    pub fn mapped(&self, a: f64, b: f64) -> GaussRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        GaussRule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * half).collect(),
        }
    }
}

fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> Result<GaussRule> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Usage("quadrature order must be at least 1".into()));
    }
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
        if i + 1 < n {
            j[(i, i + 1)] = off[i];
            j[(i + 1, i)] = off[i];
        }
    }
    let (nodes, vectors) = real_symmetric_eigen(j);
    let weights = (0..n).map(|k| mu0 * vectors[(0, k)].powi(2)).collect();
    Ok(GaussRule { nodes, weights })
}

/// Gauss–Hermite rule for the standard normal density e^{−x²/2}/√(2π);
/// weights sum to one.
pub fn gauss_hermite(n: usize) -> Result<GaussRule> {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64).sqrt()).collect();
    let mut rule = golub_welsch(&diag, &off, 1.0)?;
    symmetrize(&mut rule);
    Ok(rule)
}

/// Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Result<GaussRule> {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let mut rule = golub_welsch(&diag, &off, 2.0)?;
    symmetrize(&mut rule);
    Ok(rule)
}

/// Generalised Gauss–Laguerre rule for the weight x^α e^{−x} on [0, ∞).
pub fn gauss_laguerre(n: usize, alpha: u32) -> Result<GaussRule> {
    let a = alpha as f64;
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect();
    let mu0: f64 = (1..=alpha).map(|k| k as f64).product();
    golub_welsch(&diag, &off, mu0)
}

/// Forces exact mirror symmetry on rules for even weights.
fn symmetrize(rule: &mut GaussRule) {
    let n = rule.nodes.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if n % 2 == 1 {
        rule.nodes[n / 2] = 0.0;
    }
}

/// Composite Gauss–Legendre integration of `f` over [a, b] with `panels`
/// equal panels of `order` points each.
pub fn composite_legendre<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, order: usize, panels: usize) -> Result<f64> {
    let base = gauss_legendre(order)?;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        total += base.mapped(lo, lo + h).integrate(&mut f);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_moments() {
        let r = gauss_hermite(20).unwrap();
        assert!((r.integrate(|_| 1.0) - 1.0).abs() < 1e-13);
        assert!(r.integrate(|x| x).abs() < 1e-14);
        assert!((r.integrate(|x| x * x) - 1.0).abs() < 1e-12);
        assert!((r.integrate(|x| x.powi(4)) - 3.0).abs() < 1e-11);
        assert!((r.integrate(|x| x.powi(8)) - 105.0).abs() < 1e-9);
        // E[cos x] = e^{−1/2}.
        assert!((r.integrate(f64::cos) - (-0.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn hermite_separable_2d() {
        // E[exp(−a x²) cos(b y)] for independent standard normals.
        let r = gauss_hermite(20).unwrap();
        let (a, b) = (0.3, 0.7);
        let mut s = 0.0;
        for (x, wx) in r.nodes.iter().zip(&r.weights) {
            for (y, wy) in r.nodes.iter().zip(&r.weights) {
                s += wx * wy * (-a * x * x).exp() * (b * y).cos();
            }
        }
        let exact = (1.0 + 2.0 * a).powf(-0.5) * (-0.5 * b * b).exp();
        assert!((s - exact).abs() < 1e-10);
    }

    #[test]
    fn legendre_polynomials_exact() {
        let r = gauss_legendre(10).unwrap();
        assert!((r.integrate(|x| x.powi(18)) - 2.0 / 19.0).abs() < 1e-14);
        let m = r.mapped(0.0, std::f64::consts::PI);
        assert!((m.integrate(f64::sin) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_laguerre(12, 0).unwrap();
        assert!((r.integrate(|x| x.powi(5)) - 120.0).abs() < 1e-10);
        let r4 = gauss_laguerre(12, 4).unwrap();
        assert!((r4.integrate(|_| 1.0) - 24.0).abs() < 1e-12);
        assert!((r4.integrate(|x| x) - 120.0).abs() < 1e-10);
    }

    #[test]
    fn composite_handles_oscillation() {
        let v = composite_legendre(|x| (20.0 * x).cos(), 0.0, 3.0, 16, 16).unwrap();
        assert!((v - (60.0f64).sin() / 20.0).abs() < 1e-13);
    }

    #[test]
    fn zero_order_is_usage_error() {
        assert!(gauss_hermite(0).is_err());
    }
}
