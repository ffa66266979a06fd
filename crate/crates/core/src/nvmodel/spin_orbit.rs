use serde::Serialize;

use crate::fock::{embed_one_body, to_table_basis, Configuration, OneBodyOperator, TableState};
use crate::linalg::{c, r, CMatrix, HamiltonianBlock, ZERO};

use super::names;

/// Table II orbital operators on (ex, ey, a) with A = B = 1.
fn orbital_operators() -> [CMatrix; 3] {
    let i = c(0.0, 1.0);
    let mut ox = CMatrix::zeros(3, 3);
    ox[(1, 2)] = i;
    ox[(2, 1)] = -i;
    let mut oy = CMatrix::zeros(3, 3);
    oy[(0, 2)] = -i;
    oy[(2, 0)] = i;
    let mut oz = CMatrix::zeros(3, 3);
    oz[(0, 1)] = i;
    oz[(1, 0)] = -i;
    [ox, oy, oz]
}

fn pauli() -> [CMatrix; 3] {
    let sx = CMatrix::from_row_slice(2, 2, &[ZERO, r(1.0), r(1.0), ZERO]);
    let sy = CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]);
    let sz = CMatrix::from_row_slice(2, 2, &[r(1.0), ZERO, ZERO, r(-1.0)]);
    [sx, sy, sz]
}

/// One-body terms λxy O_x ⊗ σx, λxy O_y ⊗ σy, λz O_z ⊗ σz.
///
/// The hole picture flips the sign of the electron spin-orbit coupling; with
/// the Table II operators and Pauli matrices for the spin that flip is
/// already absorbed, giving A1/A2 above E1/E2 for λz > 0.
pub fn spin_orbit_operators(lambda_xy: f64, lambda_z: f64) -> [OneBodyOperator; 3] {
    let [ox, oy, oz] = orbital_operators();
    let [sx, sy, sz] = pauli();
    [
        OneBodyOperator::new(ox * r(lambda_xy), sx),
        OneBodyOperator::new(oy * r(lambda_xy), sy),
        OneBodyOperator::new(oz * r(lambda_z), sz),
    ]
}

#[derive(Clone, Debug)]
pub struct SpinOrbitHamiltonian {
    /// All fifteen states, table order.
    pub full: HamiltonianBlock,
    /// Restriction to {A1, A2, Ex, Ey, E1, E2}.
    pub excited_triplet: HamiltonianBlock,
}

/// Spin-orbit on the table basis, built from the determinant embedding.
pub fn spin_orbit_hamiltonian(lambda_xy: f64, lambda_z: f64) -> SpinOrbitHamiltonian {
    let mut h = CMatrix::zeros(15, 15);
    for op in spin_orbit_operators(lambda_xy, lambda_z) {
        h += embed_one_body(&op);
    }
    let full = to_table_basis(&h);
    let excited_triplet = full.restrict(&names(&TableState::EXCITED_TRIPLET));
    SpinOrbitHamiltonian { full, excited_triplet }
}

/// λz (|A1⟩⟨A1| + |A2⟩⟨A2| − |E1⟩⟨E1| − |E2⟩⟨E2|) on {A1, A2, Ex, Ey, E1, E2}.
pub fn excited_triplet_spin_orbit(lambda_z: f64) -> HamiltonianBlock {
    let d = [lambda_z, lambda_z, 0.0, 0.0, -lambda_z, -lambda_z];
    let m = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(6, d.iter().map(|&v| r(v))));
    HamiltonianBlock::new(names(&TableState::EXCITED_TRIPLET), m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinOrbitLink {
    pub from: TableState,
    pub to: TableState,
    pub from_config: Configuration,
    pub to_config: Configuration,
    /// |⟨to|H_SO|from⟩|
    pub magnitude: f64,
    /// Contribution of the axial term alone.
    pub axial: f64,
    /// Contribution of the non-axial term alone.
    pub non_axial: f64,
}

/// Every pair of distinct table states coupled by spin-orbit, from < to.
pub fn nonradiative_links(lambda_xy: f64, lambda_z: f64) -> Vec<SpinOrbitLink> {
    const TOL: f64 = 1e-12;
    let total = spin_orbit_hamiltonian(lambda_xy, lambda_z).full;
    let axial = spin_orbit_hamiltonian(0.0, lambda_z).full;
    let non_axial = spin_orbit_hamiltonian(lambda_xy, 0.0).full;
    let mut out = Vec::new();
    for (i, &from) in TableState::ALL.iter().enumerate() {
        for (j, &to) in TableState::ALL.iter().enumerate().skip(i + 1) {
            let m = total.matrix[(j, i)].norm();
            if m > TOL {
                out.push(SpinOrbitLink {
                    from,
                    to,
                    from_config: from.config(),
                    to_config: to.config(),
                    magnitude: m,
                    axial: axial.matrix[(j, i)].norm(),
                    non_axial: non_axial.matrix[(j, i)].norm(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn zero_couplings_give_zero() {
        assert!(max_abs(&spin_orbit_hamiltonian(0.0, 0.0).full.matrix) == 0.0);
    }

    #[test]
    fn axial_block_matches_closed_form() {
        let so = spin_orbit_hamiltonian(0.0, 5.5);
        assert!(so.excited_triplet.max_abs_diff(&excited_triplet_spin_orbit(5.5)) < 1e-12);
        assert!(so.full.hermitian_defect() < 1e-12);
    }

    #[test]
    fn non_axial_leaves_the_excited_triplet_alone() {
        let so = spin_orbit_hamiltonian(7.3, 0.0);
        assert!(max_abs(&so.excited_triplet.matrix) < 1e-12);
    }

    #[test]
    fn links_listed_in_the_text() {
        let links = nonradiative_links(7.3, 5.5);
        let has = |a: TableState, b: TableState| {
            links.iter().any(|l| (l.from == a && l.to == b) || (l.from == b && l.to == a))
        };
        assert!(has(TableState::SingletA1Ee, TableState::A1));
        assert!(has(TableState::SingletE1, TableState::E1));
        assert!(has(TableState::SingletE2, TableState::E2));
        assert!(has(TableState::Ex, TableState::SingletEy));
        assert!(has(TableState::Ey, TableState::SingletEx));
    }
}
