//! Gauss-Legendre quadrature rules.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// nodes in ascending order. Newton iteration on P_n from the asymptotic
/// initial guess; converges to machine precision in a handful of steps.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 1 {
        return Err(Error::validation("order", "Gauss-Legendre rule needs at least one node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // root i (counting from the upper end), Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_value_deriv(n, x);
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre_value_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_value_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The same rule mapped onto [a, b].
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (xs, ws) = gauss_legendre(n)?;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let nodes = xs.iter().map(|x| mid + half * x).collect();
    let weights = ws.iter().map(|w| half * w).collect();
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exactness() {
        // n-point rule is exact up to degree 2n-1
        let (xs, ws) = gauss_legendre(8).unwrap();
        for deg in 0..16 {
            let q: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(deg)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "degree {deg}: {q} vs {exact}");
        }
    }

    #[test]
    fn weights_positive_and_sum_to_two() {
        for n in [2, 5, 17, 64, 129] {
            let (xs, ws) = gauss_legendre(n).unwrap();
            assert!(ws.iter().all(|&w| w > 0.0));
            assert_relative_eq!(ws.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
            assert!(xs.windows(2).all(|p| p[0] < p[1]));
            assert!(xs.iter().all(|x| x.abs() < 1.0));
        }
    }

    #[test]
    fn mapped_rule_integrates_smooth_function() {
        // oracle: adaptive Simpson of 1/(1+k) on [0,2] = ln 3
        let (ks, ws) = gauss_legendre_on(0.0, 2.0, 40).unwrap();
        let q: f64 = ks.iter().zip(&ws).map(|(k, w)| w * k / (1.0 + k)).sum();
        assert_relative_eq!(q, 2.0 - 3.0f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn rejects_empty_rule() {
        assert!(gauss_legendre(0).is_err());
    }
}
