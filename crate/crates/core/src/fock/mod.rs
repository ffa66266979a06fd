//! Brute-force two-hole oracle. Six spin-orbitals {ex, ey, a} x {α, β} give
//! fifteen Slater determinants; one- and two-body operators are embedded with
//! explicit fermionic signs, and the fifteen symmetry-adapted states are
//! obtained by projection.

mod basis;
mod operators;
mod product;
mod states;

pub use basis::{build_two_hole_basis, Determinant, Orbital, Spin, SpinOrbital, N_DETERMINANTS};
pub use operators::{embed_one_body, embed_two_body, OneBodyOperator, TwoBodyTensor};
pub use product::{
    antisymmetrizer, orbital_pair, product_operator, restrict_to_determinants, spin_pair, two_hole_action,
    two_hole_action_via_product, two_particle_state, TwoHoleRep,
};
pub use states::{
    change_basis, state_matrix, symmetry_adapted_states, symmetry_defect, table_states, to_table_basis, Configuration,
    ManyBodyState, TableState,
};
