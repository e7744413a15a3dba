//! Model parameters, units, contracted form-factor kernels, and the photon
//! momentum quadrature shared by every other module.
//!
//! Energies are dimensionless multiples of mc²/2 and lengths of 2ħ/mc
//! throughout the crate; nothing carries units at runtime.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::legendre::gauss_legendre_on;

/// Documentation tags for the unit convention.
pub struct UnitSystem;

impl UnitSystem {
    pub const ENERGY_UNIT: &'static str = "mc²/2";
    pub const LENGTH_UNIT: &'static str = "2ħ/mc";
}

/// Largest cutoff for which the vacuum dominates the field-resolvent
/// quadratic form, keeping the self-energy error at O(α²). A guard constant
/// of the modeled estimate: stored, never derived, and never used to alter
/// results — only to set a warning flag.
pub const LAMBDA_BAR: f64 = 12.6;

/// Validated, immutable parameter bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Coupling constant α ≥ 0 (treated as a free small parameter).
    pub alpha: f64,
    /// Sharp ultraviolet cutoff Λ > 0 on photon momentum.
    pub lambda_cut: f64,
    /// Schwarz splitting parameter a ∈ (0,1) used by the error budget.
    pub a_split: f64,
    /// Physical fine-structure constant (sets the Coulomb strength βZ).
    pub beta: f64,
    /// Nuclear charge Z > 0.
    pub z_charge: f64,
    /// Set when `lambda_cut` exceeds [`LAMBDA_BAR`]; the O(α²) error
    /// regime is no longer guaranteed there.
    pub cutoff_warning: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            alpha: 1.0 / 137.0,
            lambda_cut: 1.0,
            a_split: 0.25,
            beta: 1.0 / 137.0,
            z_charge: 1.0,
            cutoff_warning: false,
        }
    }
}

/// Validate and bundle model parameters.
pub fn make_params(
    alpha: f64,
    lambda_cut: f64,
    a_split: f64,
    beta: f64,
    z_charge: f64,
) -> Result<ModelParams> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::validation("alpha", format!("must be finite and >= 0, got {alpha}")));
    }
    if !lambda_cut.is_finite() || lambda_cut <= 0.0 {
        return Err(Error::validation("lambda_cut", format!("must be finite and > 0, got {lambda_cut}")));
    }
    if !a_split.is_finite() || a_split <= 0.0 || a_split >= 1.0 {
        return Err(Error::validation("a_split", format!("must lie strictly in (0,1), got {a_split}")));
    }
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::validation("beta", format!("must be finite and > 0, got {beta}")));
    }
    if !z_charge.is_finite() || z_charge <= 0.0 {
        return Err(Error::validation("z_charge", format!("must be finite and > 0, got {z_charge}")));
    }
    Ok(ModelParams {
        alpha,
        lambda_cut,
        a_split,
        beta,
        z_charge,
        cutoff_warning: lambda_cut > LAMBDA_BAR,
    })
}

/// Polarization-summed squared form factor of the vector-potential coupling:
/// Σ_λ |G_λ(k)|² = 2χ(|k|)/|k|, identically zero above the sharp cutoff.
pub fn form_factor_g_sq(k: f64, lambda_cut: f64) -> f64 {
    if k > 0.0 && k <= lambda_cut {
        2.0 / k
    } else {
        0.0
    }
}

/// Polarization-summed squared form factor of the magnetic coupling:
/// Σ_λ |H_λ(k)|² = 2|k|χ(|k|), identically zero above the sharp cutoff.
pub fn form_factor_h_sq(k: f64, lambda_cut: f64) -> f64 {
    if k > 0.0 && k <= lambda_cut {
        2.0 * k
    } else {
        0.0
    }
}

/// Transverse polarization projector Σ_λ ε_λ ⊗ ε_λ = δ_ij - k̂_i k̂_j for
/// vector-coupled angular integrals.
pub fn transverse_projector(k: [f64; 3]) -> [[f64; 3]; 3] {
    let norm_sq = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            out[i][j] = if norm_sq > 0.0 { delta - k[i] * k[j] / norm_sq } else { delta };
        }
    }
    out
}

/// Gauss-Legendre rule on [0, Λ] for radial photon-momentum integrals.
/// All nodes lie strictly inside (0, Λ), matching the sharp cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonQuadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lambda_cut: f64,
}

impl PhotonQuadrature {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// ∫₀^Λ f(k) dk by the rule, summed in fixed node order.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut sum = 0.0;
        for (k, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(*k);
        }
        sum
    }

    /// Same cutoff, doubled node count; used for self-consistency checks.
    pub fn doubled(&self) -> Result<PhotonQuadrature> {
        photon_quadrature(self.lambda_cut, 2 * self.order())
    }
}

/// Build the photon quadrature. `order` is the node count (>= 2).
pub fn photon_quadrature(lambda_cut: f64, order: usize) -> Result<PhotonQuadrature> {
    if !(lambda_cut.is_finite() && lambda_cut > 0.0) {
        return Err(Error::validation("lambda_cut", format!("must be finite and > 0, got {lambda_cut}")));
    }
    if order < 2 {
        return Err(Error::validation("order", format!("needs at least 2 nodes, got {order}")));
    }
    let (nodes, weights) = gauss_legendre_on(0.0, lambda_cut, order)?;
    Ok(PhotonQuadrature { nodes, weights, lambda_cut })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn params_validate_and_flag_large_cutoff() {
        let p = make_params(1.0 / 137.0, 1.0, 0.25, 1.0 / 137.0, 1.0).unwrap();
        assert!(!p.cutoff_warning);
        let p = make_params(0.01, 20.0, 0.25, 1.0 / 137.0, 1.0).unwrap();
        assert!(p.cutoff_warning);
        assert!(make_params(0.0, 1.0, 0.25, 1.0 / 137.0, 1.0).is_ok());
        assert!(make_params(-0.1, 1.0, 0.25, 1.0 / 137.0, 1.0).is_err());
        assert!(make_params(0.1, 0.0, 0.25, 1.0 / 137.0, 1.0).is_err());
        assert!(make_params(0.1, 1.0, 1.0, 1.0 / 137.0, 1.0).is_err());
        assert!(make_params(0.1, 1.0, 0.25, 0.0, 1.0).is_err());
        assert!(make_params(0.1, 1.0, 0.25, 1.0 / 137.0, 0.0).is_err());
    }

    #[test]
    fn form_factors_vanish_exactly_above_cutoff() {
        assert_eq!(form_factor_g_sq(1.0000001, 1.0), 0.0);
        assert_eq!(form_factor_h_sq(5.0, 1.0), 0.0);
        assert_relative_eq!(form_factor_g_sq(0.5, 1.0), 4.0);
        assert_relative_eq!(form_factor_h_sq(0.5, 1.0), 1.0);
        // product of the two kernels is 4 everywhere inside the cutoff
        assert_relative_eq!(form_factor_g_sq(0.3, 2.0) * form_factor_h_sq(0.3, 2.0), 4.0);
    }

    #[test]
    fn projector_is_transverse_and_traces_to_two() {
        let k = [0.3, -1.2, 0.7];
        let p = transverse_projector(k);
        for i in 0..3 {
            let dot: f64 = (0..3).map(|j| p[i][j] * k[j]).sum();
            assert!(dot.abs() < 1e-15);
        }
        let trace: f64 = (0..3).map(|i| p[i][i]).sum();
        assert_relative_eq!(trace, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn quadrature_meets_interface_contract() {
        let q = photon_quadrature(1.0, 64).unwrap();
        assert!(q.nodes.iter().all(|&k| k > 0.0 && k < 1.0));
        assert_relative_eq!(q.integrate(|_| 1.0), 1.0, max_relative = 1e-13);
        assert_relative_eq!(q.integrate(|k| k * k), 1.0 / 3.0, max_relative = 1e-14);
        // oracle: ∫₀² k/(1+k) dk = 2 − ln 3
        let q2 = photon_quadrature(2.0, 64).unwrap();
        assert_relative_eq!(q2.integrate(|k| k / (1.0 + k)), 2.0 - 3f64.ln(), max_relative = 1e-12);
        assert!(photon_quadrature(1.0, 1).is_err());
        assert!(photon_quadrature(0.0, 8).is_err());
    }

    #[test]
    fn doubling_converges_for_integrable_functions() {
        // √k has a branch point at the endpoint, so the error is algebraic
        // in the order and each doubling visibly shrinks it
        let exact = 2.0 / 3.0 * 2f64.sqrt() * 2.0; // ∫₀² √k dk
        let q = photon_quadrature(2.0, 16).unwrap();
        let f = |k: f64| k.sqrt();
        let mut prev = (q.integrate(f) - exact).abs();
        let mut rule = q;
        for _ in 0..3 {
            rule = rule.doubled().unwrap();
            let err = (rule.integrate(f) - exact).abs();
            assert!(err < prev, "doubling did not reduce the error: {err} vs {prev}");
            prev = err;
        }
    }
}
