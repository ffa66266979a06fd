//! Optical dipoles, selection rules, polarisation analysis and branch-tracked
//! parameter scans of the excited triplet.

mod dipole;
mod polarization;
mod scans;
mod tracking;

pub use dipole::{
    dipole_blocks, dipole_matrix, dipole_operators, selection_rules, singlet_transition_ratio, transition,
    SelectionRule, SelectionRuleTable, SingletTransitionReport, TransitionDipole, CLASS_TOLERANCE,
};
pub use polarization::{axis_difference, Polarization, PolarizationReport};
pub use scans::{
    emission_amplitudes, excited_triplet_hamiltonian, ground_triplet_hamiltonian, level_table, polarization_vs_strain,
    stark_scan, strain_scan, LevelEntry, OpticalLine, OpticalParams, StarkScan, StrainAxis, StrainPolarizationPoint,
};
pub use tracking::{diagonalize_tracked, Crossing, ScanResult, TRACKING_THRESHOLD};
