//! Quadrature versions of the photon-momentum kernels that drive the
//! one-photon trial state. Each matches a closed form in [`crate::closed_form`]
//! and the pair (quadrature vs closed form) is an internal cross-check.

use crate::model::PhotonQuadrature;

/// ∫₀^Λ 8π k²/(k+1) dk — the coupling kernel: squared magnetic matrix
/// element 8πk³ against the resolvent denominator k² + k.
pub fn coupling_kernel(quad: &PhotonQuadrature) -> f64 {
    quad.integrate(|k| 8.0 * std::f64::consts::PI * k * k / (k + 1.0))
}

/// ∫₀^Λ 8π k/(1+k)² dk — the norm kernel: squared one-photon amplitude
/// 8πk³/(k² + k)² of the optimal envelope.
pub fn norm_kernel(quad: &PhotonQuadrature) -> f64 {
    quad.integrate(|k| 8.0 * std::f64::consts::PI * k / ((1.0 + k) * (1.0 + k)))
}

/// ∫₀^Λ 8π k²/(1+k)² dk — photon-number-weighted energy of the same
/// envelope: the field-energy share of the diagonal term.
pub fn field_energy_kernel(quad: &PhotonQuadrature) -> f64 {
    quad.integrate(|k| 8.0 * std::f64::consts::PI * k * k / ((1.0 + k) * (1.0 + k)))
}
