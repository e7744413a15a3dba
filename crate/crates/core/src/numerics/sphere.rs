//! Product quadrature on the unit sphere, used to evaluate the angular
//! factors of cross terms that vanish by symmetry. Gauss-Legendre in cos θ
//! crossed with a uniform (trapezoidal) φ grid is exact for spherical
//! harmonics up to high degree, so a symmetric-zero integrand comes out at
//! rounding level rather than discretization level.

use crate::error::Result;
use crate::numerics::legendre::gauss_legendre;

/// Mean of f over the unit sphere: (1/4π) ∫ f(n̂) dΩ.
pub fn sphere_average(n_polar: usize, f: impl Fn([f64; 3]) -> f64) -> Result<f64> {
    let (cs, ws) = gauss_legendre(n_polar)?;
    let n_phi = 2 * n_polar;
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut sum = 0.0;
    for (c, w) in cs.iter().zip(&ws) {
        let s = (1.0 - c * c).max(0.0).sqrt();
        let mut ring = 0.0;
        for j in 0..n_phi {
            let phi = dphi * j as f64;
            ring += f([s * phi.cos(), s * phi.sin(), *c]);
        }
        sum += w * ring * dphi;
    }
    Ok(sum / (4.0 * std::f64::consts::PI))
}

/// Mean of |f| over the unit sphere, the natural scale against which a
/// vanishing average is compared.
pub fn sphere_average_abs(n_polar: usize, f: impl Fn([f64; 3]) -> f64) -> Result<f64> {
    sphere_average(n_polar, |n| f(n).abs())
}

/// 3×3 matrix of sphere averages ⟨f_i(n̂) g_j(n̂)⟩, for trace-contraction
/// style vanishing checks.
pub fn sphere_average_matrix(
    n_polar: usize,
    f: impl Fn([f64; 3]) -> [f64; 3],
    g: impl Fn([f64; 3]) -> [f64; 3],
) -> Result<[[f64; 3]; 3]> {
    let mut out = [[0.0f64; 3]; 3];
    let (cs, ws) = gauss_legendre(n_polar)?;
    let n_phi = 2 * n_polar;
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    for (c, w) in cs.iter().zip(&ws) {
        let s = (1.0 - c * c).max(0.0).sqrt();
        for j in 0..n_phi {
            let phi = dphi * j as f64;
            let n = [s * phi.cos(), s * phi.sin(), *c];
            let fv = f(n);
            let gv = g(n);
            for a in 0..3 {
                for b in 0..3 {
                    out[a][b] += w * dphi * fv[a] * gv[b];
                }
            }
        }
    }
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v /= 4.0 * std::f64::consts::PI;
        }
    }
    Ok(out)
}
