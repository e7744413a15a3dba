//! Fock-sector trial states: the translation-invariant one-photon
//! self-energy, the exact sector minimization it must agree with, and the
//! bound-electron trial whose quotient drops by more than the bare binding.

pub mod binding;
pub mod kernels;
pub mod report;
pub mod sector;
pub mod self_energy;

pub use binding::{binding_energy_gain, binding_rayleigh, BindingGain, BindingOptions};
pub use kernels::{coupling_kernel, field_energy_kernel, norm_kernel};
pub use report::{CrossTerm, RayleighReport};
pub use sector::{one_photon_sector_minimum, SectorMinimum};
pub use self_energy::{self_energy_rayleigh, SelfEnergyOptions};
