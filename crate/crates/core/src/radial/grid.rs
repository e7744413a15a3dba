//! Uniform radial grid for the reduced wave u(r) = rφ(r) with Dirichlet
//! boundaries at r = 0 and r = r_max.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    /// Box radius, units 2ħ/mc.
    pub r_max: f64,
    /// Interior node count; spacing is r_max/(n_points+1).
    pub n_points: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::validation("r_max", format!("must be finite and > 0, got {r_max}")));
        }
        if n_points < 16 {
            return Err(Error::validation("n_points", format!("needs at least 16 interior points, got {n_points}")));
        }
        Ok(RadialGrid { r_max, n_points })
    }

    /// Default box for a Coulomb problem of strength βZ: 60 ground-state
    /// Bohr radii (the 1s scale is 2/(βZ) in these units) at 4000 points.
    pub fn coulomb_default(beta_z: f64) -> Result<Self> {
        if !(beta_z.is_finite() && beta_z > 0.0) {
            return Err(Error::validation("beta_z", format!("must be finite and > 0, got {beta_z}")));
        }
        RadialGrid::new(120.0 / beta_z, 4000)
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.n_points as f64 + 1.0)
    }

    /// Interior nodes r_i = (i+1)h, i = 0..n_points.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..=self.n_points).map(|i| i as f64 * h).collect()
    }

    /// Same box, n interior points.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        RadialGrid::new(self.r_max, n_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_nodes() {
        let g = RadialGrid::new(10.0, 99).unwrap();
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 99);
        assert!((nodes[0] - 0.1).abs() < 1e-15);
        assert!((nodes[98] - 9.9).abs() < 1e-13);
    }

    #[test]
    fn validation() {
        assert!(RadialGrid::new(0.0, 100).is_err());
        assert!(RadialGrid::new(1.0, 15).is_err());
        assert!(RadialGrid::new(1.0, 16).is_ok());
    }

    #[test]
    fn coulomb_default_scales_with_coupling() {
        let g = RadialGrid::coulomb_default(1.0 / 137.0).unwrap();
        assert!((g.r_max - 120.0 * 137.0).abs() < 1e-9);
        assert_eq!(g.n_points, 4000);
    }
}
