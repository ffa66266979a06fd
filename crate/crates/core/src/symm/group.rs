use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, r, CMatrix, CVector, I, ONE, ZERO};

use super::project::Representation;

pub const GROUP_ORDER: usize = 12;
pub const CLASS_SIZES: [usize; 6] = [1, 2, 3, 1, 2, 3];

const INTEGER_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    E,
    C3,
    SigmaV,
    EBar,
    C3Bar,
    SigmaVBar,
}

impl ClassId {
    pub const ALL: [ClassId; 6] =
        [ClassId::E, ClassId::C3, ClassId::SigmaV, ClassId::EBar, ClassId::C3Bar, ClassId::SigmaVBar];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            ClassId::E => "E",
            ClassId::C3 => "2C3",
            ClassId::SigmaV => "3σv",
            ClassId::EBar => "Ē",
            ClassId::C3Bar => "2C̄3",
            ClassId::SigmaVBar => "3σ̄v",
        }
    }

    fn barred(self) -> ClassId {
        match self {
            ClassId::E => ClassId::EBar,
            ClassId::C3 => ClassId::C3Bar,
            ClassId::SigmaV => ClassId::SigmaVBar,
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrrepName {
    #[serde(rename = "A1")]
    A1,
    #[serde(rename = "A2")]
    A2,
    #[serde(rename = "E")]
    E,
    #[serde(rename = "E1/2")]
    E12,
    #[serde(rename = "1E3/2")]
    E32a,
    #[serde(rename = "2E3/2")]
    E32b,
}

impl IrrepName {
    pub const ALL: [IrrepName; 6] =
        [IrrepName::A1, IrrepName::A2, IrrepName::E, IrrepName::E12, IrrepName::E32a, IrrepName::E32b];

    pub fn label(self) -> &'static str {
        match self {
            IrrepName::A1 => "A1",
            IrrepName::A2 => "A2",
            IrrepName::E => "E",
            IrrepName::E12 => "E1/2",
            IrrepName::E32a => "1E3/2",
            IrrepName::E32b => "2E3/2",
        }
    }

    /// Irreps of the single group (integer spin).
    pub fn is_single_valued(self) -> bool {
        matches!(self, IrrepName::A1 | IrrepName::A2 | IrrepName::E)
    }
}

impl fmt::Display for IrrepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub name: IrrepName,
    pub dimension: usize,
    pub characters: [Complex64; 6],
}

/// A character per class, in [`ClassId::ALL`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct RepCharacters {
    pub values: [Complex64; 6],
}

impl RepCharacters {
    pub fn new(values: [Complex64; 6]) -> Self {
        RepCharacters { values }
    }

    pub fn from_real(values: [f64; 6]) -> Self {
        RepCharacters { values: values.map(r) }
    }

    /// Characters of a spinless representation: the barred classes repeat the
    /// unbarred ones.
    pub fn from_single_group(values: [f64; 3]) -> Self {
        let [e, c3, sv] = values;
        Self::from_real([e, c3, sv, e, c3, sv])
    }

    pub fn conj(&self) -> Self {
        RepCharacters { values: self.values.map(|z| z.conj()) }
    }

    pub fn product(&self, other: &RepCharacters) -> Self {
        RepCharacters { values: std::array::from_fn(|k| self.values[k] * other.values[k]) }
    }
}

impl From<&Irrep> for RepCharacters {
    fn from(irrep: &Irrep) -> Self {
        RepCharacters { values: irrep.characters }
    }
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub name: &'static str,
    pub class_id: ClassId,
    /// Action on (σ1, σ2, σ3, σN): column j is the image of bond j.
    pub orbital_action: Matrix4<f64>,
    /// Proper or improper orthogonal action on Cartesian (x, y, z).
    pub cartesian: Matrix3<f64>,
    /// SU(2) action on (α, β).
    pub spinor_action: Matrix2<Complex64>,
}

impl GroupElement {
    pub fn spinor_matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| self.spinor_action[(i, j)])
    }

    /// Action on the one-hole orbitals (ex, ey, a). ex and ey transform like
    /// x and y and a is invariant, which is exactly the Cartesian matrix.
    pub fn orbital_triplet_matrix(&self) -> CMatrix {
        CMatrix::from_fn(3, 3, |i, j| r(self.cartesian[(i, j)]))
    }
}

/// Unit vectors from the vacancy to the four dangling-bond sites.
pub(crate) fn site_directions() -> [Vector3<f64>; 4] {
    let z = -1.0 / 3.0;
    let rho = (1.0f64 - z * z).sqrt();
    let carbon = |k: f64| {
        let phi = 2.0 * PI * k / 3.0;
        Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
    };
    [carbon(0.0), carbon(1.0), carbon(2.0), Vector3::new(0.0, 0.0, 1.0)]
}

fn rotation_z(theta: f64) -> Matrix3<f64> {
    let (s, co) = theta.sin_cos();
    Matrix3::new(co, -s, 0.0, s, co, 0.0, 0.0, 0.0, 1.0)
}

/// Mirror through the vertical plane containing the direction at azimuth `phi`.
fn mirror(phi: f64) -> Matrix3<f64> {
    let (s, co) = (2.0 * phi).sin_cos();
    Matrix3::new(co, s, 0.0, s, -co, 0.0, 0.0, 0.0, 1.0)
}

fn spinor_rotation_z(theta: f64) -> Matrix2<Complex64> {
    let h = theta / 2.0;
    Matrix2::new(c(h.cos(), -h.sin()), ZERO, ZERO, c(h.cos(), h.sin()))
}

/// Spinor action of a mirror with unit normal n in the xy plane: +i(n·σ).
fn spinor_mirror(phi: f64) -> Matrix2<Complex64> {
    let (nx, ny) = (-phi.sin(), phi.cos());
    // n·σ = [[0, nx - i ny], [nx + i ny, 0]]
    Matrix2::new(ZERO, I * c(nx, -ny), I * c(nx, ny), ZERO)
}

fn permutation_from_cartesian(m: &Matrix3<f64>) -> Matrix4<f64> {
    let sites = site_directions();
    let mut p = Matrix4::zeros();
    for (j, s) in sites.iter().enumerate() {
        let image = m * s;
        let i = sites
            .iter()
            .position(|t| (t - image).norm() < 1e-9)
            .expect("C3v operation maps a dangling bond onto another bond");
        p[(i, j)] = 1.0;
    }
    p
}

#[derive(Clone, Debug)]
pub struct DoubleGroup {
    elements: Vec<GroupElement>,
    irreps: Vec<Irrep>,
    table: Vec<[usize; GROUP_ORDER]>,
}

pub fn build_double_group_c3v() -> DoubleGroup {
    DoubleGroup::c3v()
}

impl DoubleGroup {
    pub fn c3v() -> Self {
        let third = 2.0 * PI / 3.0;
        let proper: [(&'static str, ClassId, Matrix3<f64>, Matrix2<Complex64>); 6] = [
            ("E", ClassId::E, Matrix3::identity(), Matrix2::identity()),
            ("C3+", ClassId::C3, rotation_z(third), spinor_rotation_z(third)),
            ("C3-", ClassId::C3, rotation_z(-third), spinor_rotation_z(-third)),
            ("σv1", ClassId::SigmaV, mirror(0.0), spinor_mirror(0.0)),
            ("σv2", ClassId::SigmaV, mirror(third), spinor_mirror(third)),
            ("σv3", ClassId::SigmaV, mirror(2.0 * third), spinor_mirror(2.0 * third)),
        ];
        let barred_names = ["Ē", "C̄3+", "C̄3-", "σ̄v1", "σ̄v2", "σ̄v3"];

        let mut elements = Vec::with_capacity(GROUP_ORDER);
        for (name, class_id, cart, spin) in proper.iter() {
            elements.push(GroupElement {
                name,
                class_id: *class_id,
                orbital_action: permutation_from_cartesian(cart),
                cartesian: *cart,
                spinor_action: *spin,
            });
        }
        for (k, (_, class_id, cart, spin)) in proper.iter().enumerate() {
            elements.push(GroupElement {
                name: barred_names[k],
                class_id: class_id.barred(),
                orbital_action: permutation_from_cartesian(cart),
                cartesian: *cart,
                spinor_action: -spin,
            });
        }

        let table = multiplication_table(&elements);
        DoubleGroup { elements, irreps: character_table(), table }
    }

    pub fn order(&self) -> usize {
        GROUP_ORDER
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, name: IrrepName) -> &Irrep {
        self.irreps.iter().find(|i| i.name == name).expect("all six irreps are stored")
    }

    pub fn class_sizes(&self) -> [usize; 6] {
        CLASS_SIZES
    }

    /// Index of the product `elements[a] * elements[b]` (b applied first).
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..GROUP_ORDER).find(|&b| self.table[a][b] == 0).expect("group elements are invertible")
    }

    /// m_r = (1/h) Σ_c n_c χ(c) χ_r(c)*, required to be a non-negative integer.
    pub fn reduce(&self, rep: &RepCharacters) -> Result<BTreeMap<IrrepName, usize>> {
        let mut out = BTreeMap::new();
        for irrep in &self.irreps {
            let m = self.inner_product(rep, &RepCharacters::from(irrep));
            let rounded = m.re.round();
            if (m - r(rounded)).norm() > INTEGER_TOL || rounded < 0.0 {
                return Err(Error::NonIntegerMultiplicity {
                    irrep: irrep.name.to_string(),
                    value: format!("{:.6}{:+.6}i", m.re, m.im),
                });
            }
            if rounded > 0.0 {
                out.insert(irrep.name, rounded as usize);
            }
        }
        Ok(out)
    }

    /// (1/h) Σ_c n_c a(c) b(c)*
    pub fn inner_product(&self, a: &RepCharacters, b: &RepCharacters) -> Complex64 {
        let s: Complex64 = (0..6).map(|k| a.values[k] * b.values[k].conj() * CLASS_SIZES[k] as f64).sum();
        s / GROUP_ORDER as f64
    }

    pub fn direct_product(&self, a: IrrepName, b: IrrepName) -> RepCharacters {
        RepCharacters::from(self.irrep(a)).product(&RepCharacters::from(self.irrep(b)))
    }

    /// True iff χ_bra* · χ_op · χ_ket contains the totally symmetric irrep.
    pub fn matrix_element_allowed(&self, bra: IrrepName, op: IrrepName, ket: IrrepName) -> bool {
        let chars = RepCharacters::from(self.irrep(bra))
            .conj()
            .product(&RepCharacters::from(self.irrep(op)))
            .product(&RepCharacters::from(self.irrep(ket)));
        self.reduce(&chars).map(|m| m.contains_key(&IrrepName::A1)).unwrap_or(false)
    }

    /// Characters of a concrete representation, read from the traces of its
    /// matrices. Elements of one class must have equal traces.
    pub fn characters_of(&self, rep: &dyn Representation) -> RepCharacters {
        let mut values = [ZERO; 6];
        for g in &self.elements {
            values[g.class_id.index()] = rep.matrix(g).trace();
        }
        RepCharacters { values }
    }

    /// P^(r) = (l_r / h) Σ_g χ_r(g)* R(g)
    pub fn projector(&self, rep: &dyn Representation, irrep: IrrepName) -> CMatrix {
        let ir = self.irrep(irrep);
        let n = rep.dim();
        let mut p = CMatrix::zeros(n, n);
        for g in &self.elements {
            p += rep.matrix(g) * ir.characters[g.class_id.index()].conj();
        }
        p * r(ir.dimension as f64 / GROUP_ORDER as f64)
    }

    /// Applies P^(r) to every input vector and orthonormalises the images
    /// sequentially in input order. An empty image yields an empty list.
    pub fn project_in(&self, rep: &dyn Representation, vectors: &[CVector], irrep: IrrepName) -> Vec<CVector> {
        let p = self.projector(rep, irrep);
        let images: Vec<CVector> = vectors.iter().map(|v| &p * v).collect();
        crate::linalg::gram_schmidt(&images, 1e-9)
    }
}

fn character_table() -> Vec<Irrep> {
    let one = ONE;
    let m1 = r(-1.0);
    let irrep = |name, dimension, characters| Irrep { name, dimension, characters };
    vec![
        irrep(IrrepName::A1, 1, [one; 6]),
        // The barred-mirror entry is −1: the printed +1 breaks orthogonality with A1.
        irrep(IrrepName::A2, 1, [one, one, m1, one, one, m1]),
        irrep(IrrepName::E, 2, [r(2.0), m1, ZERO, r(2.0), m1, ZERO]),
        irrep(IrrepName::E12, 2, [r(2.0), one, ZERO, r(-2.0), m1, ZERO]),
        irrep(IrrepName::E32a, 1, [one, m1, I, m1, one, -I]),
        irrep(IrrepName::E32b, 1, [one, m1, -I, m1, one, I]),
    ]
}

fn multiplication_table(elements: &[GroupElement]) -> Vec<[usize; GROUP_ORDER]> {
    let find = |cart: &Matrix3<f64>, spin: &Matrix2<Complex64>| {
        elements
            .iter()
            .position(|g| (g.cartesian - cart).norm() < 1e-9 && (g.spinor_action - spin).norm() < 1e-9)
            .expect("C3v double group is closed under multiplication")
    };
    elements
        .iter()
        .map(|a| {
            let mut row = [0; GROUP_ORDER];
            for (j, b) in elements.iter().enumerate() {
                row[j] = find(&(a.cartesian * b.cartesian), &(a.spinor_action * b.spinor_action));
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symm::project::{DanglingBondRep, SpinorRep};

    #[test]
    fn twelve_elements_in_six_classes() {
        let g = DoubleGroup::c3v();
        assert_eq!(g.elements().len(), 12);
        for (k, class) in ClassId::ALL.iter().enumerate() {
            let n = g.elements().iter().filter(|e| e.class_id == *class).count();
            assert_eq!(n, CLASS_SIZES[k]);
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let g = DoubleGroup::c3v();
        let e = &g.elements()[0];
        assert_eq!(e.orbital_action, Matrix4::identity());
        assert_eq!(e.spinor_action, Matrix2::identity());
    }

    #[test]
    fn c3_plus_cycles_the_carbons() {
        let g = DoubleGroup::c3v();
        let c3 = &g.elements()[1];
        // σ1 -> σ2 -> σ3 -> σ1, σN fixed
        assert_eq!(c3.orbital_action[(1, 0)], 1.0);
        assert_eq!(c3.orbital_action[(2, 1)], 1.0);
        assert_eq!(c3.orbital_action[(0, 2)], 1.0);
        assert_eq!(c3.orbital_action[(3, 3)], 1.0);
    }

    #[test]
    fn sigma_v1_swaps_carbons_two_and_three() {
        let g = DoubleGroup::c3v();
        let s = &g.elements()[3];
        assert_eq!(s.orbital_action[(0, 0)], 1.0);
        assert_eq!(s.orbital_action[(2, 1)], 1.0);
        assert_eq!(s.orbital_action[(1, 2)], 1.0);
    }

    #[test]
    fn conjugacy_classes_are_closed() {
        let g = DoubleGroup::c3v();
        for a in 0..12 {
            for x in 0..12 {
                let conj = g.multiply(g.multiply(x, a), g.inverse(x));
                assert_eq!(g.elements()[conj].class_id, g.elements()[a].class_id);
            }
        }
    }

    #[test]
    fn spinor_actions_are_su2() {
        for e in DoubleGroup::c3v().elements() {
            let u = e.spinor_action;
            assert!((u * u.adjoint() - Matrix2::identity()).norm() < 1e-14);
            assert!((u.determinant() - ONE).norm() < 1e-14);
        }
    }

    #[test]
    fn table_values() {
        let g = DoubleGroup::c3v();
        assert_eq!(g.irrep(IrrepName::E).characters[1], r(-1.0));
        assert_eq!(g.irrep(IrrepName::E).characters[2], ZERO);
        assert_eq!(g.irrep(IrrepName::E12).characters[3], r(-2.0));
    }

    #[test]
    fn traces_reproduce_stored_characters() {
        let g = DoubleGroup::c3v();
        let spin = g.characters_of(&SpinorRep);
        assert_eq!(g.reduce(&spin).unwrap(), BTreeMap::from([(IrrepName::E12, 1)]));
        let bonds = g.characters_of(&DanglingBondRep);
        assert_eq!(bonds, RepCharacters::from_single_group([4.0, 1.0, 2.0]));
    }

    #[test]
    fn dangling_bonds_reduce_to_two_a1_plus_e() {
        let g = DoubleGroup::c3v();
        let m = g.reduce(&RepCharacters::from_single_group([4.0, 1.0, 2.0])).unwrap();
        assert_eq!(m, BTreeMap::from([(IrrepName::A1, 2), (IrrepName::E, 1)]));
    }

    #[test]
    fn non_representation_is_rejected() {
        let g = DoubleGroup::c3v();
        let bad = RepCharacters::from_single_group([1.0, 0.0, 0.0]);
        assert!(matches!(g.reduce(&bad), Err(Error::NonIntegerMultiplicity { .. })));
    }

    #[test]
    fn e_times_e() {
        let g = DoubleGroup::c3v();
        let m = g.reduce(&g.direct_product(IrrepName::E, IrrepName::E)).unwrap();
        assert_eq!(m, BTreeMap::from([(IrrepName::A1, 1), (IrrepName::A2, 1), (IrrepName::E, 1)]));
        let m = g.reduce(&g.direct_product(IrrepName::E12, IrrepName::E12)).unwrap();
        assert_eq!(m, BTreeMap::from([(IrrepName::A1, 1), (IrrepName::A2, 1), (IrrepName::E, 1)]));
    }

    #[test]
    fn selection_rule_examples() {
        let g = DoubleGroup::c3v();
        assert!(g.matrix_element_allowed(IrrepName::A1, IrrepName::E, IrrepName::E));
        assert!(!g.matrix_element_allowed(IrrepName::A1, IrrepName::A1, IrrepName::A2));
        assert!(g.matrix_element_allowed(IrrepName::E, IrrepName::A2, IrrepName::E));
    }
}
