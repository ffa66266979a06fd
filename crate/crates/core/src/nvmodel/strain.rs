use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::TableState;
use crate::linalg::{c, r, CMatrix, HamiltonianBlock};

use super::names;

/// Symmetric strain tensor. The antisymmetric part of a displacement
/// gradient is a rigid rotation and never enters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrainTensor(Matrix3<f64>);

impl StrainTensor {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let defect = (m - m.transpose()).abs().max();
        let scale = m.abs().max().max(1e-300);
        if defect > 1e-12 * scale {
            return Err(Error::AsymmetricStrain { defect });
        }
        Ok(StrainTensor((m + m.transpose()) * 0.5))
    }

    /// Keeps only the symmetric part (e + eᵀ)/2 of a displacement gradient.
    pub fn symmetrized(e: Matrix3<f64>) -> Self {
        StrainTensor((e + e.transpose()) * 0.5)
    }

    pub fn zero() -> Self {
        StrainTensor(Matrix3::zeros())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }
}

/// Strain energies in GHz (unit-strain components times g).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrainCoefficients {
    #[serde(rename = "a1_a_ghz", default)]
    pub a1_a: f64,
    #[serde(rename = "a1_b_ghz", default)]
    pub a1_b: f64,
    #[serde(rename = "e1_a_ghz", default)]
    pub e1_a: f64,
    #[serde(rename = "e2_a_ghz", default)]
    pub e2_a: f64,
    #[serde(rename = "e1_b_ghz", default)]
    pub e1_b: f64,
    #[serde(rename = "e2_b_ghz", default)]
    pub e2_b: f64,
}

impl StrainCoefficients {
    /// Pure E-type strain in the ex/ey plane.
    pub fn e_type(e1: f64, e2: f64) -> Self {
        StrainCoefficients { e1_a: e1, e2_a: e2, ..Default::default() }
    }
}

/// ε as Σ_k component_k · basis_k over the six symmetry-adapted matrices
/// A1^a, A1^b, E1^a, E2^a, E1^b, E2^b.
#[derive(Clone, Debug, PartialEq)]
pub struct StrainDecomposition {
    pub components: [f64; 6],
    pub basis: [Matrix3<f64>; 6],
}

impl StrainDecomposition {
    pub fn resum(&self) -> Matrix3<f64> {
        self.components.iter().zip(self.basis.iter()).map(|(c, b)| b * *c).sum()
    }
}

fn strain_basis() -> [Matrix3<f64>; 6] {
    let z = 0.0;
    [
        Matrix3::new(1.0, z, z, z, 1.0, z, z, z, z),
        Matrix3::new(z, z, z, z, z, z, z, z, 1.0),
        Matrix3::new(1.0, z, z, z, -1.0, z, z, z, z),
        Matrix3::new(z, 1.0, z, 1.0, z, z, z, z, z),
        Matrix3::new(z, z, 1.0, z, z, z, 1.0, z, z),
        Matrix3::new(z, z, z, z, z, 1.0, z, 1.0, z),
    ]
}

/// δA1a = g(exx+eyy)/2, δA1b = g ezz, δE1a = g(exx−eyy)/2, δE2a = g(exy+eyx)/2,
/// δE1b = g(exz+ezx)/2, δE2b = g(eyz+ezy)/2.
pub fn strain_coefficients(eps: &StrainTensor, g: f64) -> (StrainCoefficients, StrainDecomposition) {
    let e = eps.matrix();
    let components = [
        0.5 * (e[(0, 0)] + e[(1, 1)]),
        e[(2, 2)],
        0.5 * (e[(0, 0)] - e[(1, 1)]),
        0.5 * (e[(0, 1)] + e[(1, 0)]),
        0.5 * (e[(0, 2)] + e[(2, 0)]),
        0.5 * (e[(1, 2)] + e[(2, 1)]),
    ];
    let coeffs = StrainCoefficients {
        a1_a: g * components[0],
        a1_b: g * components[1],
        e1_a: g * components[2],
        e2_a: g * components[3],
        e1_b: g * components[4],
        e2_b: g * components[5],
    };
    (coeffs, StrainDecomposition { components, basis: strain_basis() })
}

/// E-type structure on {A1, A2, Ex, Ey, E1, E2} for couplings (δ1, δ2):
/// A1–E1 δ1, A1–E2 −iδ2, A2–E1 iδ2, A2–E2 −δ1, Ex/Ey [[δ1, δ2], [δ2, −δ1]].
pub fn strain_structure(d1: f64, d2: f64) -> CMatrix {
    let mut m = CMatrix::zeros(6, 6);
    let (a1, a2, ex, ey, e1, e2) = (0, 1, 2, 3, 4, 5);
    let mut set = |i: usize, j: usize, v| {
        m[(i, j)] = v;
        m[(j, i)] = num_complex::Complex64::conj(&v);
    };
    set(a1, e1, r(d1));
    set(a1, e2, c(0.0, -d2));
    set(a2, e1, c(0.0, d2));
    set(a2, e2, r(-d1));
    set(ex, ex, r(d1));
    set(ex, ey, r(d2));
    set(ey, ey, r(-d1));
    m
}

#[derive(Clone, Debug)]
pub struct StrainHamiltonian {
    /// {A1, A2, Ex, Ey, E1, E2}
    pub excited_triplet: HamiltonianBlock,
    /// {¹E1, ¹E2, ¹A1(e²)}
    pub singlets_ee: HamiltonianBlock,
    /// {¹Ex, ¹Ey}
    pub singlets_ae: HamiltonianBlock,
    /// {³A2−, ³A20, ³A2+}
    pub ground_triplet: HamiltonianBlock,
    /// {¹A1(a²)}
    pub singlet_aa: HamiltonianBlock,
}

/// Strain blocks from δE1 ≡ δE1a and δE2 ≡ δE2a plus the A1-type shifts
/// (2δA1a on e², δA1a + δA1b on ae, 2δA1b on a²). E^b terms are dropped.
pub fn strain_hamiltonian(c_: &StrainCoefficients) -> StrainHamiltonian {
    let (d1, d2) = (c_.e1_a, c_.e2_a);
    let shift = |n: usize, v: f64| CMatrix::identity(n, n) * r(v);
    let ee = 2.0 * c_.a1_a;
    let ae = c_.a1_a + c_.a1_b;
    let aa = 2.0 * c_.a1_b;

    let excited = strain_structure(d1, d2) + shift(6, ae);

    let mut singlets_ee = shift(3, ee);
    singlets_ee[(0, 2)] += r(2.0 * d1);
    singlets_ee[(2, 0)] += r(2.0 * d1);
    singlets_ee[(1, 2)] += r(2.0 * d2);
    singlets_ee[(2, 1)] += r(2.0 * d2);

    let mut singlets_ae = shift(2, ae);
    singlets_ae[(0, 0)] += r(d1);
    singlets_ae[(1, 1)] += r(-d1);
    singlets_ae[(0, 1)] += r(d2);
    singlets_ae[(1, 0)] += r(d2);

    StrainHamiltonian {
        excited_triplet: HamiltonianBlock::new(names(&TableState::EXCITED_TRIPLET), excited),
        singlets_ee: HamiltonianBlock::new(names(&TableState::SINGLETS_EE), singlets_ee),
        singlets_ae: HamiltonianBlock::new(names(&TableState::SINGLETS_AE), singlets_ae),
        ground_triplet: HamiltonianBlock::new(names(&TableState::GROUND_TRIPLET), shift(3, ee)),
        singlet_aa: HamiltonianBlock::new(["1A1(a2)"], shift(1, aa)),
    }
}

impl StrainHamiltonian {
    /// All blocks placed into the fifteen-state table basis.
    pub fn full(&self) -> HamiltonianBlock {
        let mut m = CMatrix::zeros(15, 15);
        for block in
            [&self.excited_triplet, &self.singlets_ee, &self.singlets_ae, &self.ground_triplet, &self.singlet_aa]
        {
            let idx: Vec<usize> = block
                .basis
                .iter()
                .map(|n| TableState::from_name(n).expect("block bases are table states").index())
                .collect();
            for (i, &p) in idx.iter().enumerate() {
                for (j, &q) in idx.iter().enumerate() {
                    m[(p, q)] = block.matrix[(i, j)];
                }
            }
        }
        HamiltonianBlock::new(TableState::ALL.iter().map(|s| s.name()), m)
    }
}
