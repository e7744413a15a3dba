//! Rayleigh-quotient report: the audited decomposition every trial-state
//! evaluation returns, including the cross terms that must vanish.

use serde::{Deserialize, Serialize};

/// A coupling term that vanishes identically (by parity or an antisymmetric
/// contraction) together with its numerically evaluated magnitude and the
/// scale it should be compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossTerm {
    pub name: String,
    pub value: f64,
    pub scale: f64,
}

impl CrossTerm {
    pub fn new(name: impl Into<String>, value: f64, scale: f64) -> Self {
        CrossTerm { name: name.into(), value, scale }
    }

    /// |value| ≤ tol·scale — the vanishing criterion.
    pub fn vanishes_within(&self, tol: f64) -> bool {
        self.value.abs() <= tol * self.scale.abs()
    }
}

/// Decomposed Rayleigh quotient of a trial state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayleighReport {
    /// ⟨ψ, Tψ⟩ / ⟨ψ, ψ⟩ for the trial state.
    pub quotient: f64,
    /// Squared norm of the one-photon component (the vacuum component has
    /// norm 1, so the full denominator is 1 + norm_sq).
    pub norm_sq: f64,
    /// Photon field energy ⟨ψ, H_f ψ⟩ (numerator units, not normalized).
    pub field_energy: f64,
    /// Kinetic norm of the electron envelope, ‖p φ‖².
    pub kinetic_norm: f64,
    /// Cross terms that vanish identically, with their evaluated magnitudes.
    pub cross_terms: Vec<CrossTerm>,
    /// Fitted order in α of (quotient − leading closed form): the exponent
    /// of the first neglected correction.
    pub residual_order: f64,
}

impl RayleighReport {
    /// All recorded cross terms vanish within the stated relative tolerance.
    pub fn cross_terms_vanish(&self, tol: f64) -> bool {
        self.cross_terms.iter().all(|t| t.vanishes_within(tol))
    }
}
