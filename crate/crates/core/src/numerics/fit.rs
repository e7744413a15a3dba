//! Small fitting helpers for convergence studies: log-log slopes and
//! Richardson extrapolation over halved parameters.

use crate::error::{Error, Result};

/// Least-squares slope of ln y against ln x. All points must be positive.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::validation("points", "slope fit needs at least two points"));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::validation("points", "log-log fit needs positive coordinates"));
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return Err(Error::validation("points", "degenerate abscissas in slope fit"));
    }
    Ok((n * sxy - sx * sy) / denom)
}

/// Richardson limit of v(h) = v₀ + c₁h + c₂h² + … sampled at h, h/2, h/4, …
/// (`values[i]` is the sample at h/2^i). Each table level cancels the next
/// integer power of h.
pub fn richardson_by_halving(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::validation("values", "extrapolation needs at least one sample"));
    }
    let mut row = values.to_vec();
    let mut level = 1i32;
    while row.len() > 1 {
        let factor = 2f64.powi(level);
        let mut next = Vec::with_capacity(row.len() - 1);
        for i in 0..row.len() - 1 {
            next.push((factor * row[i + 1] - row[i]) / (factor - 1.0));
        }
        row = next;
        level += 1;
    }
    Ok(row[0])
}
