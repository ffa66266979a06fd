//! Gaussian dangling-bond model and its two-electron integrals: the Coulomb
//! tensor over {ex, ey} and the spin-spin parameters Δ, Δ′, Δ″.

mod geometry;
mod grid;
mod integrals;
mod mc;
mod orbitals;

pub use geometry::{DefectGeometry, DEFAULT_BOND_LENGTH};
pub use grid::ProductGrid;
pub use integrals::{
    coulomb_tensor, spin_spin_parameters, spin_spin_sweep, sweep_trends, CoulombTensorEstimate, Monotonicity,
    SpinSpinEstimate, SpinSpinSweepPoint, Trend, COULOMB_GHZ_ANGSTROM,
};
pub use mc::{Estimate, PairDensity, QuadratureSpec};
pub use orbitals::{
    build_orbitals, build_orbitals_mirror_symmetric, lowdin, site_overlap, width_for_overlap, DefectOrbitals,
    GaussianOrbital, GaussianOrbitalModel, OverlapCheck, DEFAULT_SITE_OVERLAP,
};
