//! Variational numerics for a nonrelativistic electron coupled to a
//! quantized radiation field with an ultraviolet cutoff.
//!
//! The crate answers one question from several independent directions: how
//! does coupling the electron to the photon field shift its energy, and does
//! an external binding potential gain or lose from that coupling?
//!
//! * [`model`] — units, parameters, form factors, and the photon-momentum
//!   quadrature every trial-state evaluation shares.
//! * [`closed_form`] — the leading self-energy, its a-priori error budget,
//!   the coupling threshold that guarantees increased binding, and the
//!   mass-renormalization conventions; all exact expressions.
//! * [`radial`] — finite-difference engines for the bound electron: ground
//!   state, dipole-coupled ℓ=1 spectrum, and the exact radiative correction
//!   evaluated by two independent routes.
//! * [`fock`] — explicit trial states in the vacuum ⊕ one-photon sector:
//!   Rayleigh-quotient reports, the exact sector minimization, and the
//!   binding-energy gain.
//! * [`verify`] — a self-check battery wiring the above together.
//! * [`numerics`] — the supporting quadratures, stable special functions,
//!   tridiagonal eigensolvers, and fitting helpers.
//!
//! Energies are measured in units of mc²/2 and lengths in units of 2ħ/mc, so
//! the hydrogen-like ground state sits at −(βZ)²/4 and the fine-structure
//! scale enters only through the coupling α and the Coulomb strength β.

pub mod closed_form;
pub mod error;
pub mod fock;
pub mod model;
pub mod numerics;
pub mod radial;
pub mod verify;

pub use closed_form::{
    alpha_threshold, hydrogen_ground_energy, mass_renormalization, self_energy_error_budget,
    self_energy_leading, MassRenormalization, SelfEnergyEstimate, ThresholdReport,
};
pub use error::{Error, Result};
pub use fock::{
    binding_energy_gain, binding_rayleigh, one_photon_sector_minimum, self_energy_rayleigh,
    BindingGain, BindingOptions, RayleighReport, SectorMinimum, SelfEnergyOptions,
};
pub use model::{make_params, photon_quadrature, ModelParams, PhotonQuadrature, LAMBDA_BAR};
pub use radial::{
    dipole_spectrum, f_lambda, inner_photon_integral, radiative_correction_exact, solve_ground_state,
    GroundState, IntegralMethod, RadialGrid, RadialPotential, RadiativeCorrection, SpectralMeasure,
};
pub use verify::{all_passed, run_verification, Check, CheckKind, VerifyConfig};

// Keep the guide's code examples compiling: each chapter is attached as a
// doctest module so `cargo test` exercises every snippet in the book.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/units-and-model.md")]
    mod units_and_model {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/ground-and-spectrum.md")]
    mod ground_and_spectrum {}
    #[doc = include_str!("../../../book/src/radiative-correction.md")]
    mod radiative_correction {}
    #[doc = include_str!("../../../book/src/fock-trials.md")]
    mod fock_trials {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
