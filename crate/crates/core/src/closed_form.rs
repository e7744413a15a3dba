//! Closed-form expressions: vacuum resolvent integrals, the leading
//! self-energy, a-priori bounds, the error budget, coupling thresholds, the
//! log-approximant radiative correction, and mass renormalization.
//!
//! Every function here has an independent integral or arithmetic oracle in
//! the test suite; the small-argument regimes route through the stabilized
//! series in [`crate::numerics::stable`] so relative precision survives
//! Λ → 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::stable::{ln1p_minus_ratio, sq_minus_twice_log_defect, x_minus_ln1p};

const PI: f64 = std::f64::consts::PI;

fn check_lambda(lambda_cut: f64) -> Result<()> {
    if !(lambda_cut.is_finite() && lambda_cut > 0.0) {
        return Err(Error::validation("lambda_cut", format!("must be finite and > 0, got {lambda_cut}")));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::validation("alpha", format!("must be finite and >= 0, got {alpha}")));
    }
    Ok(())
}

fn check_a_split(a_split: f64) -> Result<()> {
    if !(a_split.is_finite() && a_split > 0.0 && a_split < 1.0) {
        return Err(Error::validation("a_split", format!("must lie strictly in (0,1), got {a_split}")));
    }
    Ok(())
}

/// Vacuum expectation of the once-resolved field coupling,
/// 8π ∫₀^Λ k²/(k+1) dk = 4π[Λ² − 2(Λ − ln(1+Λ))].
pub fn vacuum_resolvent_integral(lambda_cut: f64) -> Result<f64> {
    check_lambda(lambda_cut)?;
    Ok(4.0 * PI * sq_minus_twice_log_defect(lambda_cut))
}

/// Squared norm of the resolved one-photon component,
/// 8π ∫₀^Λ k/(1+k)² dk = 8π[ln(1+Λ) − Λ/(1+Λ)].
pub fn resolvent_norm_sq(lambda_cut: f64) -> Result<f64> {
    check_lambda(lambda_cut)?;
    Ok(8.0 * PI * ln1p_minus_ratio(lambda_cut))
}

/// Field energy carried by the resolved one-photon component per unit α,
/// 8π ∫₀^Λ k²/(1+k)² dk = 8π[Λ − 2ln(1+Λ) + Λ/(1+Λ)].
pub fn resolvent_field_energy(lambda_cut: f64) -> Result<f64> {
    check_lambda(lambda_cut)?;
    if lambda_cut >= 0.5 {
        let l = lambda_cut;
        return Ok(8.0 * PI * (l - 2.0 * l.ln_1p() + l / (1.0 + l)));
    }
    // direct form cancels twice over at small Λ; integrate the expansion of
    // k²/(1+k)² instead: Σ_{j>=0} (-1)^j (j+1) Λ^{j+3}/(j+3)
    let mut sum = 0.0;
    let mut pow = lambda_cut * lambda_cut * lambda_cut;
    let mut j = 0.0;
    let mut sign = 1.0;
    loop {
        let contrib = sign * (j + 1.0) * pow / (j + 3.0);
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * sum.abs() || j > 200.0 {
            break;
        }
        pow *= lambda_cut;
        sign = -sign;
        j += 1.0;
    }
    Ok(8.0 * PI * sum)
}

/// Leading self-energy with its O(α²) error coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfEnergyEstimate {
    /// 8πα[Λ − ln(1+Λ)], in units mc²/2.
    pub leading: f64,
    /// C(Λ): the O(α²) coefficient, product of the vacuum resolvent
    /// integral and the resolvent norm.
    pub error_coeff: f64,
    /// C(Λ)·α².
    pub error_bound: f64,
}

/// Leading-order self-energy 8πα[Λ − ln(1+Λ)] and its error budget.
/// Identically equal to 4παΛ² − α·vacuum_resolvent_integral(Λ).
pub fn self_energy_leading(alpha: f64, lambda_cut: f64) -> Result<SelfEnergyEstimate> {
    check_alpha(alpha)?;
    check_lambda(lambda_cut)?;
    let leading = 8.0 * PI * alpha * x_minus_ln1p(lambda_cut);
    let error_coeff = vacuum_resolvent_integral(lambda_cut)? * resolvent_norm_sq(lambda_cut)?;
    Ok(SelfEnergyEstimate { leading, error_coeff, error_bound: error_coeff * alpha * alpha })
}

/// A-priori bound on the trial state's field energy: 8παΛ.
pub fn apriori_field_bound(alpha: f64, lambda_cut: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_lambda(lambda_cut)?;
    Ok(8.0 * PI * alpha * lambda_cut)
}

/// A-priori bound on the electron momentum: 8παΛ(1+Λ²)/(1−a).
pub fn apriori_kinetic_bound(alpha: f64, lambda_cut: f64, a_split: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_lambda(lambda_cut)?;
    check_a_split(a_split)?;
    Ok(8.0 * PI * alpha * lambda_cut * (1.0 + lambda_cut * lambda_cut) / (1.0 - a_split))
}

/// Coupling regime gate for the error budget: α must not exceed a/(16πΛ).
pub fn schwarz_condition(lambda_cut: f64, a_split: f64) -> Result<f64> {
    check_lambda(lambda_cut)?;
    check_a_split(a_split)?;
    Ok(a_split / (16.0 * PI * lambda_cut))
}

/// Second-order error budget with its regime flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// α²[(16π)²Λ²(1+Λ²)/(1−a) + 224π²Λ²].
    pub value: f64,
    /// Whether α ≤ a/(16πΛ), the regime in which the budget is derived.
    /// The value is still returned outside the regime, flagged here.
    pub in_regime: bool,
}

/// Total O(α²) error budget of the self-energy expansion.
pub fn self_energy_error_budget(alpha: f64, lambda_cut: f64, a_split: f64) -> Result<ErrorBudget> {
    check_alpha(alpha)?;
    check_lambda(lambda_cut)?;
    check_a_split(a_split)?;
    let l2 = lambda_cut * lambda_cut;
    let coeff = (16.0 * PI).powi(2) * l2 * (1.0 + l2) / (1.0 - a_split) + 224.0 * PI * PI * l2;
    Ok(ErrorBudget {
        value: alpha * alpha * coeff,
        in_regime: alpha <= schwarz_condition(lambda_cut, a_split)?,
    })
}

/// Log-approximant radiative correction R_C = αe₀(32π/3)ln(1+Λ).
pub fn radiative_correction_log_approx(alpha: f64, e0: f64, lambda_cut: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_lambda(lambda_cut)?;
    if !(e0.is_finite() && e0 > 0.0) {
        return Err(Error::validation("e0", format!("must be finite and > 0, got {e0}")));
    }
    Ok(alpha * e0 * 32.0 * PI / 3.0 * lambda_cut.ln_1p())
}

/// Bound on the exact radiative correction: E(V,Λ) ≤ ‖pφ‖²(32π/3)ln(1+Λ).
pub fn radiative_correction_upper_bound(p_norm_sq: f64, lambda_cut: f64) -> Result<f64> {
    check_lambda(lambda_cut)?;
    if !(p_norm_sq.is_finite() && p_norm_sq >= 0.0) {
        return Err(Error::validation("p_norm_sq", format!("must be finite and >= 0, got {p_norm_sq}")));
    }
    Ok(p_norm_sq * 32.0 * PI / 3.0 * lambda_cut.ln_1p())
}

/// Coupling threshold below which enhanced binding is guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    /// Radiative branch: (2/3)e₀ln(1+Λ) / [16πΛ²(1+Λ²)/(1−a) + 14πΛ²],
    /// the coupling at which the error budget eats the whole correction.
    pub rc_term: f64,
    /// Schwarz branch a/(16πΛ).
    pub schwarz_term: f64,
    /// min(rc_term, schwarz_term).
    pub alpha_max: f64,
    /// The probe coupling, echoed back iff it clears alpha_max.
    pub binding_guaranteed_at: Option<f64>,
    /// Self-consistency: budget(alpha on the rc branch) equals the
    /// log-approximant correction there, to 1e-12 relative.
    pub budget_consistent: bool,
}

/// Evaluate both threshold branches and their minimum. `probe_alpha`, when
/// given, is checked against the threshold (typically the physical β).
pub fn alpha_threshold(
    e0: f64,
    lambda_cut: f64,
    a_split: f64,
    probe_alpha: Option<f64>,
) -> Result<ThresholdReport> {
    check_lambda(lambda_cut)?;
    check_a_split(a_split)?;
    if !(e0.is_finite() && e0 > 0.0) {
        return Err(Error::validation("e0", format!("must be finite and > 0, got {e0}")));
    }
    let l2 = lambda_cut * lambda_cut;
    let denom = 16.0 * PI * l2 * (1.0 + l2) / (1.0 - a_split) + 14.0 * PI * l2;
    let rc_term = 2.0 / 3.0 * e0 * lambda_cut.ln_1p() / denom;
    let schwarz_term = schwarz_condition(lambda_cut, a_split)?;
    let alpha_max = rc_term.min(schwarz_term);
    let budget = self_energy_error_budget(rc_term, lambda_cut, a_split)?.value;
    let correction = radiative_correction_log_approx(rc_term, e0, lambda_cut)?;
    let budget_consistent = (budget - correction).abs() <= 1e-12 * correction.abs();
    let binding_guaranteed_at = probe_alpha.filter(|&a| a.is_finite() && a > 0.0 && a <= alpha_max);
    Ok(ThresholdReport { rc_term, schwarz_term, alpha_max, binding_guaranteed_at, budget_consistent })
}

/// Ground-state energy magnitude of the Coulomb problem: e₀ = (βZ)²/4.
pub fn hydrogen_ground_energy(beta: f64, z_charge: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::validation("beta", format!("must be finite and > 0, got {beta}")));
    }
    if !(z_charge.is_finite() && z_charge > 0.0) {
        return Err(Error::validation("z_charge", format!("must be finite and > 0, got {z_charge}")));
    }
    let bz = beta * z_charge;
    Ok(bz * bz / 4.0)
}

/// The two renormalized-mass conventions and their disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassRenormalization {
    /// m_phys/m = 1 + 4αF(Λ/m), spectral convention.
    pub spectral_ratio: f64,
    /// m_phys/m = 1 + α(32π/3)ln(1+Λ/m), logarithmic convention.
    pub log_ratio: f64,
    /// |spectral − log| / log.
    pub relative_difference: f64,
}

/// Compare the spectral and logarithmic mass-renormalization conventions.
/// `f_value` is F(Λ/m) from the spectral engine (or any approximant).
pub fn mass_renormalization(alpha: f64, lambda_over_m: f64, f_value: f64) -> Result<MassRenormalization> {
    check_alpha(alpha)?;
    if !(lambda_over_m.is_finite() && lambda_over_m > 0.0) {
        return Err(Error::validation("lambda_over_m", format!("must be finite and > 0, got {lambda_over_m}")));
    }
    if !(f_value.is_finite() && f_value >= 0.0) {
        return Err(Error::validation("f_value", format!("must be finite and >= 0, got {f_value}")));
    }
    let spectral_ratio = 1.0 + 4.0 * alpha * f_value;
    let log_ratio = 1.0 + alpha * 32.0 * PI / 3.0 * lambda_over_m.ln_1p();
    Ok(MassRenormalization {
        spectral_ratio,
        log_ratio,
        relative_difference: (spectral_ratio - log_ratio).abs() / log_ratio,
    })
}
