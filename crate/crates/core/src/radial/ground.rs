//! Ground state of p² + V by second-order finite differences on the reduced
//! radial equation -u'' + V(r)u = E u.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::tridiag::SymTridiag;
use crate::radial::grid::RadialGrid;
use crate::radial::potential::RadialPotential;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Discretized ground state of p² + V.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    /// Binding energy magnitude: the lowest eigenvalue is -e0 < 0.
    pub e0: f64,
    /// Reduced wave u(r) = rφ(r) at the interior nodes, normalized to
    /// ∫u² dr = 1/(4π) so that ‖φ‖ = 1.
    pub u_samples: Vec<f64>,
    /// ‖pφ‖², the Dirichlet form of the discrete Laplacian on u.
    pub p_norm_sq: f64,
}

/// Assemble the ℓ-channel FD operator -u'' + [V + ℓ(ℓ+1)/r²]u on the grid.
pub(crate) fn channel_operator(
    potential: &RadialPotential,
    grid: &RadialGrid,
    ell: u32,
) -> SymTridiag {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let cent = (ell * (ell + 1)) as f64;
    let d: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&r| 2.0 * inv_h2 + potential.value(r) + cent / (r * r))
        .collect();
    let e = vec![-inv_h2; d.len() - 1];
    SymTridiag::new(d, e).expect("grid guarantees n >= 16")
}

/// Solve for the ground state. Errors with `UnboundPotential` when the
/// discrete spectrum is nonnegative (condition for a bound state fails).
pub fn solve_ground_state(potential: &RadialPotential, grid: &RadialGrid) -> Result<GroundState> {
    let op = channel_operator(potential, grid, 0);
    let lowest = op.eigenvalue(0)?;
    if lowest >= 0.0 {
        return Err(Error::UnboundPotential);
    }
    let mut u = op.inverse_iteration(lowest, &[])?;

    // ground state of the Jacobi operator: no interior sign change
    let h = grid.spacing();
    let peak = u.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    let flips = u
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0 && w[0].abs() > 1e-12 * peak && w[1].abs() > 1e-12 * peak)
        .count();
    if flips > 0 {
        return Err(Error::Numerical(format!(
            "computed ground state changes sign {flips} times"
        )));
    }

    // normalize to ∫u²dr = 1/(4π)
    let norm_sq: f64 = u.iter().map(|x| x * x).sum::<f64>() * h;
    let scale = (FOUR_PI * norm_sq).sqrt().recip();
    for x in u.iter_mut() {
        *x *= scale;
    }

    // bond Dirichlet form with the zero boundary values included
    let mut dirichlet = u[0] * u[0] + u[u.len() - 1] * u[u.len() - 1];
    for w in u.windows(2) {
        let dv = w[1] - w[0];
        dirichlet += dv * dv;
    }
    let p_norm_sq = FOUR_PI * dirichlet / h;

    Ok(GroundState { e0: -lowest, u_samples: u, p_norm_sq })
}

impl GroundState {
    /// Radial dipole source s(r) = u'(r) - u(r)/r by central differences,
    /// using the Dirichlet boundary values at both box ends.
    pub fn dipole_source(&self, grid: &RadialGrid) -> Vec<f64> {
        let h = grid.spacing();
        let u = &self.u_samples;
        let n = u.len();
        let nodes = grid.nodes();
        let mut s = vec![0.0; n];
        for i in 0..n {
            let left = if i == 0 { 0.0 } else { u[i - 1] };
            let right = if i + 1 == n { 0.0 } else { u[i + 1] };
            s[i] = (right - left) / (2.0 * h) - u[i] / nodes[i];
        }
        s
    }
}
