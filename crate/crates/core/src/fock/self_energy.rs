//! One-photon Rayleigh quotient for the translation-invariant electron: the
//! variational self-energy whose leading term has a closed form.

use serde::{Deserialize, Serialize};

use crate::closed_form::self_energy_leading;
use crate::error::{Error, Result};
use crate::fock::kernels::{coupling_kernel, field_energy_kernel, norm_kernel};
use crate::fock::report::{CrossTerm, RayleighReport};
use crate::model::{photon_quadrature, PhotonQuadrature};
use crate::numerics::fit::log_log_slope;
use crate::numerics::sphere::sphere_average;

/// Knobs for the self-energy evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfEnergyOptions {
    /// Photon-momentum Gauss–Legendre order.
    pub quad_order: usize,
    /// Gaussian electron envelope width; `None` is the translation-invariant
    /// limit (zero envelope kinetic energy). A finite width adds exactly
    /// 3/(2w²) to the quotient.
    pub envelope_width: Option<f64>,
    /// Polar order of the angular averages used for the vanishing cross terms.
    pub sphere_order: usize,
}

impl Default for SelfEnergyOptions {
    fn default() -> Self {
        SelfEnergyOptions { quad_order: 64, envelope_width: None, sphere_order: 24 }
    }
}

pub(crate) fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Antisymmetric contraction of the odd transverse moment: numerically
/// evaluates Σ_{jam} ε_{jam}·⟨k̂_a (δ_{jm} − k̂_j k̂_m)⟩ over the sphere, which
/// vanishes because ε is antisymmetric in (j, m) while the projector is
/// symmetric (and each odd moment vanishes separately).
pub(crate) fn transverse_epsilon_contraction(sphere_order: usize) -> Result<f64> {
    let mut total = 0.0;
    for j in 0..3 {
        for a in 0..3 {
            for m in 0..3 {
                let eps = epsilon(j, a, m);
                if eps == 0.0 {
                    continue;
                }
                let moment = sphere_average(sphere_order, |n| {
                    let delta = if j == m { 1.0 } else { 0.0 };
                    n[a] * (delta - n[j] * n[m])
                })?;
                total += eps * moment;
            }
        }
    }
    Ok(total)
}

fn quotient_from(alpha: f64, lambda_cut: f64, kin: f64, quad: &PhotonQuadrature) -> (f64, f64) {
    let v1 = coupling_kernel(quad);
    let n2 = norm_kernel(quad);
    let norm_sq = alpha * n2;
    let a2 = 4.0 * std::f64::consts::PI * alpha * lambda_cut * lambda_cut;
    (a2 + kin - alpha * v1 / (1.0 + norm_sq), norm_sq)
}

/// Evaluate the one-photon trial state and return the decomposed quotient.
///
/// The optimal envelope against the magnetic coupling gives
/// quotient = 4παΛ² + kin − α·V₁/(1 + α·N₂) with V₁, N₂ the coupling and
/// norm kernels; the evaluation is aborted with a convergence error when
/// doubling the quadrature order moves the quotient by more than 1e-8
/// relatively.
pub fn self_energy_rayleigh(
    alpha: f64,
    lambda_cut: f64,
    opts: &SelfEnergyOptions,
) -> Result<RayleighReport> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::validation("alpha", format!("coupling must be ≥ 0, got {alpha}")));
    }
    if let Some(w) = opts.envelope_width {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::validation(
                "envelope_width",
                format!("width must be positive, got {w}"),
            ));
        }
    }
    let kin = opts.envelope_width.map(|w| 1.5 / (w * w)).unwrap_or(0.0);
    let quad = photon_quadrature(lambda_cut, opts.quad_order)?;
    let (quotient, norm_sq) = quotient_from(alpha, lambda_cut, kin, &quad);

    // quadrature convergence gate: doubling the order must not move the value
    let doubled = quad.doubled()?;
    let (quotient_fine, _) = quotient_from(alpha, lambda_cut, kin, &doubled);
    let scale = quotient.abs().max(quotient_fine.abs()).max(f64::MIN_POSITIVE);
    if (quotient - quotient_fine).abs() / scale > 1e-8 {
        return Err(Error::Convergence(format!(
            "photon quadrature order {} not converged: {quotient:e} vs {quotient_fine:e} at \
             doubled order",
            opts.quad_order
        )));
    }

    let v1 = coupling_kernel(&quad);
    let field_energy = alpha * field_energy_kernel(&quad);

    // vanishing cross terms, evaluated rather than assumed
    let numerator_scale = quotient.abs() + alpha * v1 + f64::MIN_POSITIVE;
    let angular = transverse_epsilon_contraction(opts.sphere_order)?;
    let magnetic_momentum_magnitude =
        alpha * quad.integrate(|k| 16.0 * std::f64::consts::PI * k / (1.0 + k));
    let contraction = CrossTerm::new(
        "sigma_e_dp_contraction",
        angular * magnetic_momentum_magnitude,
        numerator_scale,
    );
    let mean_direction = sphere_average(opts.sphere_order, |n| n[2])?;
    let momentum_overlap = CrossTerm::new(
        "envelope_momentum_overlap",
        mean_direction * kin.sqrt() * (1.0 + norm_sq),
        numerator_scale,
    );

    // order in α of the gap to the leading closed form
    let alphas = [1e-4, 1e-3, 1e-2];
    let mut points = Vec::with_capacity(alphas.len());
    for a in alphas {
        let (q, _) = quotient_from(a, lambda_cut, kin, &quad);
        let residual = q - kin - self_energy_leading(a, lambda_cut)?.leading;
        points.push((a, residual.abs()));
    }
    let residual_order = log_log_slope(&points)?;

    Ok(RayleighReport {
        quotient,
        norm_sq,
        field_energy,
        kinetic_norm: kin,
        cross_terms: vec![contraction, momentum_overlap],
        residual_order,
    })
}
