//! Closed-form Hamiltonian blocks of the NV⁻ center on the fifteen two-hole
//! states: single-particle levels, Coulomb ordering, spin-orbit, spin-spin,
//! strain and electric field. Energies in GHz.

mod coulomb;
mod efield;
mod params;
mod single_particle;
mod spin_orbit;
mod spin_spin;
mod strain;

pub use coulomb::{coulomb_expectations, CoulombExpectations};
pub use efield::{efield_hamiltonian, efield_to_strain, EFieldHamiltonian};
pub use params::{FineStructureParams, PiezoParams, SingleParticleParams};
pub use single_particle::{single_particle_levels, SingleParticleLevels};
pub use spin_orbit::{
    excited_triplet_spin_orbit, nonradiative_links, spin_orbit_hamiltonian, spin_orbit_operators, SpinOrbitHamiltonian,
    SpinOrbitLink,
};
pub use spin_spin::{
    spin_spin_hamiltonian, zero_field_splitting_spin, SpatialSpinOperator, SPIN_SPIN_PREFACTOR_GHZ_A3,
};
pub use strain::{
    strain_coefficients, strain_hamiltonian, strain_structure, StrainCoefficients, StrainDecomposition,
    StrainHamiltonian, StrainTensor,
};

use crate::fock::TableState;

pub(crate) fn names(states: &[TableState]) -> Vec<&'static str> {
    states.iter().map(|s| s.name()).collect()
}
