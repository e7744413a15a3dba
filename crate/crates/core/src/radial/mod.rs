//! Radial discretization of the electron problem: finite-difference grids,
//! central potentials, the ℓ=0 ground state, the dipole-coupled ℓ=1
//! spectrum, and the exact radiative correction built on top of them.

pub mod correction;
pub mod grid;
pub mod ground;
pub mod potential;
pub mod spectrum;

pub use correction::{
    f_lambda, inner_photon_integral, inner_photon_integral_quadrature, radiative_correction_exact,
    radiative_resolvent_route, radiative_routes, radiative_spectral_route, IntegralMethod,
    RadiativeCorrection,
};
pub use grid::RadialGrid;
pub use ground::{solve_ground_state, GroundState};
pub use potential::RadialPotential;
pub use spectrum::{
    dipole_spectrum, dipole_spectrum_windowed, SpectralMeasure, SpectrumWindow, POLARIZATION_SUM,
};
