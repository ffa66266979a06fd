use nalgebra::{Matrix3, Vector3};

use crate::fock::TableState;
use crate::linalg::{r, CMatrix, HamiltonianBlock};

use super::names;
use super::params::PiezoParams;
use super::strain::{strain_structure, StrainTensor};

/// Strain induced by a field E (MV/m) through the C3v piezoelectric tensor:
/// [[aEx+bEz, −aEy, cEx], [−aEy, −aEx+bEz, cEy], [cEx, cEy, dEz]].
pub fn efield_to_strain(field: &Vector3<f64>, p: &PiezoParams) -> StrainTensor {
    let (ex, ey, ez) = (field.x, field.y, field.z);
    let m = Matrix3::new(
        p.a * ex + p.b * ez,
        -p.a * ey,
        p.c * ex,
        -p.a * ey,
        -p.a * ex + p.b * ez,
        p.c * ey,
        p.c * ex,
        p.c * ey,
        p.d * ez,
    );
    StrainTensor::symmetrized(m)
}

#[derive(Clone, Debug)]
pub struct EFieldHamiltonian {
    /// {A1, A2, Ex, Ey, E1, E2}
    pub excited_triplet: HamiltonianBlock,
    /// {³A2−, ³A20, ³A2+}
    pub ground_triplet: HamiltonianBlock,
}

/// Excited block g(b+d)Ez + ga·S(Ex, Ey), with S the E-type strain structure;
/// ground block 2gbEz.
pub fn efield_hamiltonian(field: &Vector3<f64>, p: &PiezoParams) -> EFieldHamiltonian {
    let shift = p.g * (p.b + p.d) * field.z;
    let excited = strain_structure(p.g * p.a * field.x, p.g * p.a * field.y) + CMatrix::identity(6, 6) * r(shift);
    let ground = CMatrix::identity(3, 3) * r(2.0 * p.g * p.b * field.z);
    EFieldHamiltonian {
        excited_triplet: HamiltonianBlock::new(names(&TableState::EXCITED_TRIPLET), excited),
        ground_triplet: HamiltonianBlock::new(names(&TableState::GROUND_TRIPLET), ground),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::nvmodel::strain::{strain_coefficients, strain_hamiltonian};

    #[test]
    fn axial_field_strain() {
        let p = PiezoParams::default();
        let e = efield_to_strain(&Vector3::new(0.0, 0.0, 2.0), &p);
        let want = Matrix3::from_diagonal(&Vector3::new(2.0 * p.b, 2.0 * p.b, 2.0 * p.d));
        assert!((e.matrix() - want).abs().max() < 1e-20);
    }

    #[test]
    fn transverse_x_field_strain() {
        let p = PiezoParams::default();
        let e = *efield_to_strain(&Vector3::new(1.5, 0.0, 0.0), &p).matrix();
        assert_eq!(e[(0, 0)], p.a * 1.5);
        assert_eq!(e[(1, 1)], -p.a * 1.5);
        assert_eq!(e[(0, 2)], p.c * 1.5);
    }

    #[test]
    fn zero_field_zero_blocks() {
        let h = efield_hamiltonian(&Vector3::zeros(), &PiezoParams::default());
        assert_eq!(max_abs(&h.excited_triplet.matrix), 0.0);
        assert_eq!(max_abs(&h.ground_triplet.matrix), 0.0);
    }

    #[test]
    fn composition_with_strain_for_x_and_z() {
        let p = PiezoParams::default();
        let f = Vector3::new(0.7, 0.0, -1.1);
        let (c_, _) = strain_coefficients(&efield_to_strain(&f, &p), p.g);
        let via_strain = strain_hamiltonian(&c_);
        let direct = efield_hamiltonian(&f, &p);
        assert!(via_strain.excited_triplet.max_abs_diff(&direct.excited_triplet) < 1e-9);
        assert!(via_strain.ground_triplet.max_abs_diff(&direct.ground_triplet) < 1e-9);
    }
}
