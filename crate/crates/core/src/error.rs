//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input failed a precondition. `field` names the offending parameter.
    #[error("invalid {field}: {message}")]
    Validation { field: &'static str, message: String },

    /// The discrete spectrum of p² + V is nonnegative: no bound state to
    /// perturb, so every binding quantity is undefined.
    #[error("unbound potential: the discrete spectrum has no negative eigenvalue")]
    UnboundPotential,

    /// A discretization is too coarse for the requested quantity.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Numerical breakdown that valid inputs should never trigger
    /// (singular solve, non-converging eigeniteration).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn validation(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation { field, message: message.into() }
    }
}
