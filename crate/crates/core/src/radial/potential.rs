//! Radial potentials: the Coulomb family and tabulated custom potentials
//! loaded from two-column text files.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    /// V(r) = -βZ/r.
    Coulomb { beta_z: f64 },
    /// Piecewise-linear interpolation of sampled (r, V(r)) pairs, constant
    /// continuation outside the sampled range.
    Custom { rs: Vec<f64>, vs: Vec<f64> },
}

impl RadialPotential {
    pub fn coulomb(beta_z: f64) -> Result<Self> {
        if !(beta_z.is_finite() && beta_z > 0.0) {
            return Err(Error::validation("beta_z", format!("must be finite and > 0, got {beta_z}")));
        }
        Ok(RadialPotential::Coulomb { beta_z })
    }

    /// Build from samples; radii must be finite, strictly increasing, and
    /// nonnegative, values finite.
    pub fn from_samples(rs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if rs.len() != vs.len() {
            return Err(Error::validation("samples", "radius and value columns differ in length"));
        }
        if rs.len() < 2 {
            return Err(Error::validation("samples", "need at least two sample points"));
        }
        if rs.iter().any(|r| !r.is_finite() || *r < 0.0) || vs.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("samples", "all entries must be finite, radii nonnegative"));
        }
        if rs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation("samples", "radii must be strictly increasing"));
        }
        Ok(RadialPotential::Custom { rs, vs })
    }

    /// Parse a two-column text file: `r V(r)` per line, whitespace separated,
    /// `#` comments and blank lines ignored.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::validation("potential_file", format!("{}: {e}", path.display()))
        })?;
        let mut rs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<f64> {
                tok.ok_or_else(|| {
                    Error::validation("potential_file", format!("line {}: expected two columns", lineno + 1))
                })?
                .parse::<f64>()
                .map_err(|e| Error::validation("potential_file", format!("line {}: {e}", lineno + 1)))
            };
            rs.push(parse(cols.next())?);
            vs.push(parse(cols.next())?);
            if cols.next().is_some() {
                return Err(Error::validation(
                    "potential_file",
                    format!("line {}: expected exactly two columns", lineno + 1),
                ));
            }
        }
        RadialPotential::from_samples(rs, vs)
    }

    /// Potential value at radius r > 0.
    pub fn value(&self, r: f64) -> f64 {
        match self {
            RadialPotential::Coulomb { beta_z } => -beta_z / r,
            RadialPotential::Custom { rs, vs } => {
                if r <= rs[0] {
                    return vs[0];
                }
                if r >= rs[rs.len() - 1] {
                    return vs[vs.len() - 1];
                }
                let idx = match rs.binary_search_by(|probe| probe.total_cmp(&r)) {
                    Ok(i) => return vs[i],
                    Err(i) => i,
                };
                let t = (r - rs[idx - 1]) / (rs[idx] - rs[idx - 1]);
                vs[idx - 1] + t * (vs[idx] - vs[idx - 1])
            }
        }
    }
}
