//! Exact minimization over the vacuum ⊕ one-photon sector at fixed photon
//! quadrature: an independent linear-algebra route to the variational
//! self-energy that must reproduce the optimal-envelope quotient.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::photon_quadrature;

/// Result of the sector minimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorMinimum {
    /// Rayleigh quotient at the stationary envelope.
    pub energy: f64,
    /// Orthonormal-basis amplitudes of the one-photon component, one per
    /// quadrature node.
    pub envelope: Vec<f64>,
    /// The photon-momentum nodes the amplitudes belong to.
    pub nodes: Vec<f64>,
}

/// Minimize the energy over the span {vacuum, one-photon basis at quadrature
/// nodes}: eliminate the photon block at the vacuum energy by a dense LU
/// solve of the stationarity system, then evaluate the full quotient at the
/// resulting envelope.
///
/// * diagonal photon entries: L + k² + k with L = 4παΛ² the two-photon
///   diagonal term shared by both sectors,
/// * vacuum↔photon coupling: −√α·m̂ with m̂² = ω_q·8πk_q³ folding the
///   quadrature weight and the squared magnetic matrix element.
pub fn one_photon_sector_minimum(
    alpha: f64,
    lambda_cut: f64,
    quad_order: usize,
) -> Result<SectorMinimum> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::validation("alpha", format!("coupling must be ≥ 0, got {alpha}")));
    }
    let quad = photon_quadrature(lambda_cut, quad_order)?;
    let n = quad.order();
    let pi = std::f64::consts::PI;
    let l_diag = 4.0 * pi * alpha * lambda_cut * lambda_cut;

    let m_hat: Vec<f64> = quad
        .nodes
        .iter()
        .zip(&quad.weights)
        .map(|(&k, &w)| (w * 8.0 * pi * k * k * k).sqrt())
        .collect();
    let d_diag: Vec<f64> = quad.nodes.iter().map(|&k| k * k + k).collect();

    // stationarity at the vacuum energy: (H_pp − L·I) c = √α·m̂
    let mut system = DMatrix::<f64>::zeros(n, n);
    for q in 0..n {
        system[(q, q)] = d_diag[q];
    }
    let rhs = DVector::from_iterator(n, m_hat.iter().map(|m| alpha.sqrt() * m));
    let envelope = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular photon block in sector solve".into()))?;

    // full quotient at the stationary envelope
    let norm_ph: f64 = envelope.iter().map(|c| c * c).sum();
    let cross: f64 = envelope.iter().zip(&m_hat).map(|(c, m)| c * m).sum::<f64>() * alpha.sqrt();
    let diag: f64 = envelope
        .iter()
        .zip(&d_diag)
        .map(|(c, d)| c * c * (l_diag + d))
        .sum();
    let energy = (l_diag - 2.0 * cross + diag) / (1.0 + norm_ph);

    Ok(SectorMinimum {
        energy,
        envelope: envelope.iter().copied().collect(),
        nodes: quad.nodes.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::self_energy::{self_energy_rayleigh, SelfEnergyOptions};
    use approx::assert_relative_eq;

    #[test]
    fn sector_minimum_reproduces_the_rayleigh_quotient() {
        for (alpha, lambda) in [(1.0 / 137.0, 1.0), (1e-3, 4.0), (0.05, 0.3)] {
            let sector = one_photon_sector_minimum(alpha, lambda, 64).unwrap();
            let rayleigh = self_energy_rayleigh(
                alpha,
                lambda,
                &SelfEnergyOptions { quad_order: 64, ..Default::default() },
            )
            .unwrap();
            let scale = sector.energy.abs().max(rayleigh.quotient.abs());
            assert!(
                (sector.energy - rayleigh.quotient).abs() <= 1e-10 * scale,
                "sector {} vs rayleigh {}",
                sector.energy,
                rayleigh.quotient
            );
        }
    }

    #[test]
    fn node_doubling_is_stable() {
        let coarse = one_photon_sector_minimum(1.0 / 137.0, 1.0, 48).unwrap();
        let fine = one_photon_sector_minimum(1.0 / 137.0, 1.0, 96).unwrap();
        let scale = coarse.energy.abs().max(fine.energy.abs());
        assert!((coarse.energy - fine.energy).abs() <= 1e-8 * scale);
    }

    #[test]
    fn envelope_is_the_resolvent_profile() {
        let alpha = 0.01;
        let sector = one_photon_sector_minimum(alpha, 2.0, 32).unwrap();
        let quad = photon_quadrature(2.0, 32).unwrap();
        for ((c, &k), &w) in sector.envelope.iter().zip(&quad.nodes).zip(&quad.weights) {
            let pi = std::f64::consts::PI;
            let expected = (alpha * w * 8.0 * pi * k * k * k).sqrt() / (k * k + k);
            assert_relative_eq!(*c, expected, max_relative = 1e-12);
            assert!(*c > 0.0);
        }
        assert_eq!(sector.envelope.len(), sector.nodes.len());
    }

    #[test]
    fn zero_coupling_gives_zero_energy() {
        let sector = one_photon_sector_minimum(0.0, 1.0, 16).unwrap();
        assert_eq!(sector.energy, 0.0);
        assert!(sector.envelope.iter().all(|&c| c == 0.0));
    }
}
