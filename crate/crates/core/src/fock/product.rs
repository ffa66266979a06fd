//! First-quantised view of the two-hole space: the 36-dimensional product
//! space of two spin-orbitals, with index (2·o1 + s1)·6 + (2·o2 + s2).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{kron, r, CMatrix, CVector};
use crate::symm::{GroupElement, Representation};

use super::basis::{build_two_hole_basis, N_DETERMINANTS, N_SPIN_ORBITALS};

/// Isometry B (36 x 15) mapping each determinant to (|ij> - |ji>)/√2.
pub fn antisymmetrizer() -> CMatrix {
    let n = N_SPIN_ORBITALS;
    let mut b = CMatrix::zeros(n * n, N_DETERMINANTS);
    for d in build_two_hole_basis() {
        let (i, j) = d.occupied;
        b[(i * n + j, d.index())] = r(FRAC_1_SQRT_2);
        b[(j * n + i, d.index())] = r(-FRAC_1_SQRT_2);
    }
    b
}

/// |u v> for one-hole orbital vectors over (ex, ey, a): a 9-vector indexed 3·o1 + o2.
pub fn orbital_pair(u: &CVector, v: &CVector) -> CVector {
    crate::linalg::kron_vec(u, v)
}

/// |s t> for spinors: a 4-vector indexed 2·s1 + s2.
pub fn spin_pair(s: &CVector, t: &CVector) -> CVector {
    crate::linalg::kron_vec(s, t)
}

/// Embeds orbital (9) ⊗ spin (4) into the 36-dim product space and projects
/// onto the determinant basis with B†.
pub fn two_particle_state(orbital: &CVector, spin: &CVector) -> CVector {
    let n = N_SPIN_ORBITALS;
    let mut v = CVector::zeros(n * n);
    for o1 in 0..3 {
        for o2 in 0..3 {
            for s1 in 0..2 {
                for s2 in 0..2 {
                    let k = (2 * o1 + s1) * n + (2 * o2 + s2);
                    v[k] = orbital[3 * o1 + o2] * spin[2 * s1 + s2];
                }
            }
        }
    }
    antisymmetrizer().adjoint() * v
}

/// Operator orbital (9x9, pairs 3·o1+o2) ⊗ spin (4x4, pairs 2·s1+s2) on the
/// 36-dim product space, reordered to spin-orbital pair indices.
pub fn product_operator(orbital: &CMatrix, spin: &CMatrix) -> CMatrix {
    let n = N_SPIN_ORBITALS;
    let idx = |o1: usize, s1: usize, o2: usize, s2: usize| (2 * o1 + s1) * n + (2 * o2 + s2);
    let mut m = CMatrix::zeros(n * n, n * n);
    for o1 in 0..3 {
        for o2 in 0..3 {
            for p1 in 0..3 {
                for p2 in 0..3 {
                    let w = orbital[(3 * o1 + o2, 3 * p1 + p2)];
                    if w == crate::linalg::ZERO {
                        continue;
                    }
                    for s1 in 0..2 {
                        for s2 in 0..2 {
                            for t1 in 0..2 {
                                for t2 in 0..2 {
                                    m[(idx(o1, s1, o2, s2), idx(p1, t1, p2, t2))] +=
                                        w * spin[(2 * s1 + s2, 2 * t1 + t2)];
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// Restricts a product-space operator to the determinant basis, B† M B.
pub fn restrict_to_determinants(m: &CMatrix) -> CMatrix {
    let b = antisymmetrizer();
    b.adjoint() * m * b
}

/// 15x15 action of a group element on the determinant basis: the 2x2 minors
/// of the one-particle action U, since U|i> ∧ U|j> = Σ_{k<l} (U_ki U_lj − U_li U_kj) |k> ∧ |l>.
pub fn two_hole_action(g: &GroupElement) -> CMatrix {
    let u = kron(&g.orbital_triplet_matrix(), &g.spinor_matrix());
    let basis = build_two_hole_basis();
    let mut m = CMatrix::zeros(N_DETERMINANTS, N_DETERMINANTS);
    for ket in &basis {
        let (i, j) = ket.occupied;
        for bra in &basis {
            let (k, l) = bra.occupied;
            m[(bra.index(), ket.index())] = u[(k, i)] * u[(l, j)] - u[(l, i)] * u[(k, j)];
        }
    }
    m
}

/// Same action through the product space, B† (U ⊗ U) B.
pub fn two_hole_action_via_product(g: &GroupElement) -> CMatrix {
    let u = kron(&g.orbital_triplet_matrix(), &g.spinor_matrix());
    let b = antisymmetrizer();
    b.adjoint() * kron(&u, &u) * b
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TwoHoleRep;

impl Representation for TwoHoleRep {
    fn dim(&self) -> usize {
        N_DETERMINANTS
    }
    fn matrix(&self, g: &GroupElement) -> CMatrix {
        two_hole_action(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, orthonormality_defect};
    use crate::symm::{DoubleGroup, IrrepName};

    #[test]
    fn antisymmetrizer_is_an_isometry() {
        assert!(orthonormality_defect(&antisymmetrizer()) < 1e-15);
    }

    #[test]
    fn two_hole_actions_are_unitary_and_compose() {
        let g = DoubleGroup::c3v();
        let mats: Vec<CMatrix> = g.elements().iter().map(two_hole_action).collect();
        for a in 0..12 {
            assert!(orthonormality_defect(&mats[a]) < 1e-12);
            for b in 0..12 {
                let ab = g.multiply(a, b);
                assert!(max_abs(&(&mats[a] * &mats[b] - &mats[ab])) < 1e-12);
            }
        }
    }

    #[test]
    fn minor_form_matches_product_space() {
        for g in DoubleGroup::c3v().elements() {
            assert!(max_abs(&(two_hole_action(g) - two_hole_action_via_product(g))) < 1e-14);
        }
    }

    #[test]
    fn two_holes_carry_only_single_valued_irreps() {
        let g = DoubleGroup::c3v();
        let m = g.reduce(&g.characters_of(&TwoHoleRep)).unwrap();
        assert!(m.keys().all(|k| k.is_single_valued()));
        assert_eq!(m.values().sum::<usize>() + m.get(&IrrepName::E).copied().unwrap_or(0), 15);
    }
}
