//! Group-theoretic fine-structure model of the negatively charged nitrogen-vacancy
//! center in diamond.
//!
//! The crate is organised bottom-up:
//!
//! * [`symm`] builds the C3v double group, its character table and projectors.
//! * [`fock`] is a brute-force two-hole Slater-determinant space used as an oracle.
//! * [`nvmodel`] holds the closed-form Hamiltonian blocks (spin-orbit, spin-spin,
//!   strain, electric field) in the basis of the fifteen two-hole states.
//! * [`quad`] evaluates Coulomb and spin-spin integrals over a Gaussian
//!   dangling-bond model.
//! * [`spectra`] diagonalises, tracks branches and classifies optical polarisation.
//! * [`cli`] wires everything to JSON configs and CSV/JSON outputs.
//!
//! Energies are in GHz (h = 1), electric fields in MV/m, lengths in Å.

pub mod cli;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod nvmodel;
pub mod quad;
pub mod spectra;
pub mod symm;

pub use error::{Error, Result};
