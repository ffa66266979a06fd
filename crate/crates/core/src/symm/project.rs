use serde::{Deserialize, Serialize};

use crate::linalg::{r, CMatrix, CVector};

use super::group::{DoubleGroup, GroupElement, IrrepName};

/// A matrix representation of the double group on some vector space.
pub trait Representation {
    fn dim(&self) -> usize;
    fn matrix(&self, g: &GroupElement) -> CMatrix;
}

/// The four dangling bonds (σ1, σ2, σ3, σN).
#[derive(Clone, Copy, Debug, Default)]
pub struct DanglingBondRep;

impl Representation for DanglingBondRep {
    fn dim(&self) -> usize {
        4
    }
    fn matrix(&self, g: &GroupElement) -> CMatrix {
        CMatrix::from_fn(4, 4, |i, j| r(g.orbital_action[(i, j)]))
    }
}

/// Spin-1/2 (α, β).
#[derive(Clone, Copy, Debug, Default)]
pub struct SpinorRep;

impl Representation for SpinorRep {
    fn dim(&self) -> usize {
        2
    }
    fn matrix(&self, g: &GroupElement) -> CMatrix {
        g.spinor_matrix()
    }
}

/// The one-hole orbitals (ex, ey, a).
#[derive(Clone, Copy, Debug, Default)]
pub struct OrbitalRep;

impl Representation for OrbitalRep {
    fn dim(&self) -> usize {
        3
    }
    fn matrix(&self, g: &GroupElement) -> CMatrix {
        g.orbital_triplet_matrix()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// σ1, σ2, σ3, σN
    DanglingBonds,
    /// ex, ey, a
    Orbitals,
    /// α, β
    Spinor,
}

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::DanglingBonds => 4,
            Basis::Orbitals => 3,
            Basis::Spinor => 2,
        }
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Basis::DanglingBonds => &["σ1", "σ2", "σ3", "σN"],
            Basis::Orbitals => &["ex", "ey", "a"],
            Basis::Spinor => &["α", "β"],
        }
    }

    pub fn representation(self) -> &'static dyn Representation {
        match self {
            Basis::DanglingBonds => &DanglingBondRep,
            Basis::Orbitals => &OrbitalRep,
            Basis::Spinor => &SpinorRep,
        }
    }
}

/// Complex coefficients over a named one-particle basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitalVector {
    pub basis: Basis,
    pub coefficients: CVector,
}

impl OrbitalVector {
    pub fn new(basis: Basis, coefficients: CVector) -> Self {
        assert_eq!(coefficients.len(), basis.dim(), "coefficient count must match the basis");
        OrbitalVector { basis, coefficients }
    }

    pub fn unit(basis: Basis, k: usize) -> Self {
        let mut v = CVector::zeros(basis.dim());
        v[k] = r(1.0);
        OrbitalVector { basis, coefficients: v }
    }

    /// Every basis vector, in basis order.
    pub fn all_units(basis: Basis) -> Vec<Self> {
        (0..basis.dim()).map(|k| Self::unit(basis, k)).collect()
    }

    /// |<self|other>|^2 / (|self|^2 |other|^2): 1 when collinear.
    pub fn collinearity(&self, other: &OrbitalVector) -> f64 {
        let d = self.coefficients.dotc(&other.coefficients).norm_sqr();
        d / (self.coefficients.norm_squared() * other.coefficients.norm_squared())
    }
}

impl DoubleGroup {
    /// Projects every input onto `irrep` and returns an orthonormal spanning
    /// set of the images, orthogonalised in input order.
    ///
    /// Panics if the inputs do not share one basis.
    pub fn project(&self, vectors: &[OrbitalVector], irrep: IrrepName) -> Vec<OrbitalVector> {
        let Some(first) = vectors.first() else {
            return Vec::new();
        };
        let basis = first.basis;
        assert!(vectors.iter().all(|v| v.basis == basis), "mixed bases in projection");
        let raw: Vec<CVector> = vectors.iter().map(|v| v.coefficients.clone()).collect();
        self.project_in(basis.representation(), &raw, irrep)
            .into_iter()
            .map(|coefficients| OrbitalVector { basis, coefficients })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, CVector};

    fn bonds(c: [f64; 4]) -> OrbitalVector {
        OrbitalVector::new(Basis::DanglingBonds, CVector::from_iterator(4, c.map(r)))
    }

    #[test]
    fn a1_projection_spans_carbon_sum_and_nitrogen() {
        let g = DoubleGroup::c3v();
        let out = g.project(&OrbitalVector::all_units(Basis::DanglingBonds), IrrepName::A1);
        assert_eq!(out.len(), 2);
        assert!((out[0].collinearity(&bonds([1.0, 1.0, 1.0, 0.0])) - 1.0).abs() < 1e-12);
        assert!((out[1].collinearity(&bonds([0.0, 0.0, 0.0, 1.0])) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn e_projection_gives_ex_then_ey() {
        let g = DoubleGroup::c3v();
        let out = g.project(&OrbitalVector::all_units(Basis::DanglingBonds), IrrepName::E);
        assert_eq!(out.len(), 2);
        let s6 = 6f64.sqrt();
        let s2 = 2f64.sqrt();
        let ex = bonds([2.0 / s6, -1.0 / s6, -1.0 / s6, 0.0]);
        let ey = bonds([0.0, 1.0 / s2, -1.0 / s2, 0.0]);
        assert!((&out[0].coefficients - &ex.coefficients).norm() < 1e-12);
        assert!((&out[1].coefficients - &ey.coefficients).norm() < 1e-12);
    }

    #[test]
    fn a2_projection_is_empty() {
        let g = DoubleGroup::c3v();
        assert!(g.project(&OrbitalVector::all_units(Basis::DanglingBonds), IrrepName::A2).is_empty());
        assert!(g.project(&[], IrrepName::A1).is_empty());
    }

    #[test]
    fn projectors_resolve_the_identity() {
        let g = DoubleGroup::c3v();
        for rep in [Basis::DanglingBonds, Basis::Spinor, Basis::Orbitals] {
            let rep = rep.representation();
            let mut sum = CMatrix::zeros(rep.dim(), rep.dim());
            for a in IrrepName::ALL {
                let pa = g.projector(rep, a);
                assert!(max_abs(&(&pa * &pa - &pa)) < 1e-12);
                for b in IrrepName::ALL {
                    if a != b {
                        assert!(max_abs(&(&pa * g.projector(rep, b))) < 1e-12);
                    }
                }
                sum += pa;
            }
            assert!(max_abs(&(sum - CMatrix::identity(rep.dim(), rep.dim()))) < 1e-12);
        }
    }

    #[test]
    fn orbital_triplet_matches_projected_bonds() {
        // The (ex, ey) block of the bond action, expressed in the projected
        // basis, must equal the Cartesian xy block.
        let g = DoubleGroup::c3v();
        let out = g.project(&OrbitalVector::all_units(Basis::DanglingBonds), IrrepName::E);
        for el in g.elements() {
            let m = DanglingBondRep.matrix(el);
            for i in 0..2 {
                for j in 0..2 {
                    let v = out[i].coefficients.dotc(&(&m * &out[j].coefficients));
                    assert!((v - r(el.cartesian[(i, j)])).norm() < 1e-12);
                }
            }
        }
    }
}
