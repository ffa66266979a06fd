use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, columns_to_matrix, orthonormality_defect, r, CMatrix, CVector, HamiltonianBlock, I};
use crate::symm::{DoubleGroup, IrrepName};

use super::basis::build_two_hole_basis;
use super::product::{orbital_pair, spin_pair, two_hole_action, two_particle_state, TwoHoleRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Configuration {
    #[serde(rename = "e2")]
    EE,
    #[serde(rename = "ae")]
    AE,
    #[serde(rename = "a2")]
    AA,
}

impl Configuration {
    pub const ALL: [Configuration; 3] = [Configuration::EE, Configuration::AE, Configuration::AA];

    pub fn a_count(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Configuration::EE => "e2",
            Configuration::AE => "ae",
            Configuration::AA => "a2",
        }
    }
}

/// The fifteen two-hole states, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableState {
    TripletMinus,
    TripletZero,
    TripletPlus,
    SingletE1,
    SingletE2,
    SingletA1Ee,
    A1,
    A2,
    E1,
    E2,
    Ey,
    Ex,
    SingletEx,
    SingletEy,
    SingletA1Aa,
}

impl TableState {
    pub const ALL: [TableState; 15] = [
        TableState::TripletMinus,
        TableState::TripletZero,
        TableState::TripletPlus,
        TableState::SingletE1,
        TableState::SingletE2,
        TableState::SingletA1Ee,
        TableState::A1,
        TableState::A2,
        TableState::E1,
        TableState::E2,
        TableState::Ey,
        TableState::Ex,
        TableState::SingletEx,
        TableState::SingletEy,
        TableState::SingletA1Aa,
    ];

    /// Excited-state triplet in the order {A1, A2, Ex, Ey, E1, E2}.
    pub const EXCITED_TRIPLET: [TableState; 6] =
        [TableState::A1, TableState::A2, TableState::Ex, TableState::Ey, TableState::E1, TableState::E2];

    pub const GROUND_TRIPLET: [TableState; 3] =
        [TableState::TripletMinus, TableState::TripletZero, TableState::TripletPlus];

    pub const SINGLETS_EE: [TableState; 3] = [TableState::SingletE1, TableState::SingletE2, TableState::SingletA1Ee];

    pub const SINGLETS_AE: [TableState; 2] = [TableState::SingletEx, TableState::SingletEy];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TableState::TripletMinus => "3A2-",
            TableState::TripletZero => "3A20",
            TableState::TripletPlus => "3A2+",
            TableState::SingletE1 => "1E1",
            TableState::SingletE2 => "1E2",
            TableState::SingletA1Ee => "1A1(e2)",
            TableState::A1 => "A1",
            TableState::A2 => "A2",
            TableState::E1 => "E1",
            TableState::E2 => "E2",
            TableState::Ey => "Ey",
            TableState::Ex => "Ex",
            TableState::SingletEx => "1Ex",
            TableState::SingletEy => "1Ey",
            TableState::SingletA1Aa => "1A1(a2)",
        }
    }

    pub fn from_name(name: &str) -> Option<TableState> {
        TableState::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn config(self) -> Configuration {
        use TableState::*;
        match self {
            TripletMinus | TripletZero | TripletPlus | SingletE1 | SingletE2 | SingletA1Ee => Configuration::EE,
            SingletA1Aa => Configuration::AA,
            _ => Configuration::AE,
        }
    }

    pub fn irrep(self) -> IrrepName {
        use TableState::*;
        match self {
            TripletZero | SingletA1Ee | A1 | SingletA1Aa => IrrepName::A1,
            A2 => IrrepName::A2,
            _ => IrrepName::E,
        }
    }

    /// Partner index (1 or 2) within an E pair, as labelled in the table.
    pub fn partner(self) -> Option<u8> {
        use TableState::*;
        match self {
            TripletMinus | SingletE1 | E1 | Ey | SingletEx => Some(1),
            TripletPlus | SingletE2 | E2 | Ex | SingletEy => Some(2),
            _ => None,
        }
    }

    /// The other member of an E pair.
    pub fn partner_state(self) -> Option<TableState> {
        use TableState::*;
        match self {
            TripletMinus => Some(TripletPlus),
            TripletPlus => Some(TripletMinus),
            SingletE1 => Some(SingletE2),
            SingletE2 => Some(SingletE1),
            E1 => Some(E2),
            E2 => Some(E1),
            Ey => Some(Ex),
            Ex => Some(Ey),
            SingletEx => Some(SingletEy),
            SingletEy => Some(SingletEx),
            _ => None,
        }
    }

    pub fn is_triplet(self) -> bool {
        use TableState::*;
        matches!(self, TripletMinus | TripletZero | TripletPlus | A1 | A2 | E1 | E2 | Ex | Ey)
    }

    /// The explicit (unnormalised) ket of the table, on the determinant basis.
    pub fn table_ket(self) -> CVector {
        let ex = unit3(0);
        let ey = unit3(1);
        let a = unit3(2);
        let alpha = unit2(0);
        let beta = unit2(1);
        let anti = |u: &CVector, v: &CVector| orbital_pair(u, v) - orbital_pair(v, u);
        let sym = |u: &CVector, v: &CVector| orbital_pair(u, v) + orbital_pair(v, u);

        let aa = spin_pair(&alpha, &alpha);
        let bb = spin_pair(&beta, &beta);
        let t0 = spin_pair(&alpha, &beta) + spin_pair(&beta, &alpha);
        let s = spin_pair(&alpha, &beta) - spin_pair(&beta, &alpha);

        // e± = ∓(ex ± i ey), E± = |a e± − e± a>
        let e_plus = -(&ex + &ey * I);
        let e_minus = &ex - &ey * I;
        let big_plus = anti(&a, &e_plus);
        let big_minus = anti(&a, &e_minus);
        let big_x = (&big_minus - &big_plus) * r(0.5);
        let big_y = (&big_minus + &big_plus) * c(0.0, 0.5);

        let st = two_particle_state;
        use TableState::*;
        match self {
            TripletMinus => st(&anti(&ex, &ey), &bb),
            TripletZero => st(&anti(&ex, &ey), &t0),
            TripletPlus => st(&anti(&ex, &ey), &aa),
            SingletE1 => st(&(orbital_pair(&ex, &ex) - orbital_pair(&ey, &ey)), &s),
            SingletE2 => st(&sym(&ex, &ey), &s),
            SingletA1Ee => st(&(orbital_pair(&ex, &ex) + orbital_pair(&ey, &ey)), &s),
            A1 => st(&big_minus, &aa) - st(&big_plus, &bb),
            A2 => st(&big_minus, &aa) + st(&big_plus, &bb),
            E1 => st(&big_minus, &bb) - st(&big_plus, &aa),
            E2 => st(&big_minus, &bb) + st(&big_plus, &aa),
            Ey => st(&big_y, &t0),
            Ex => st(&big_x, &t0),
            SingletEx => st(&sym(&a, &ex), &s),
            SingletEy => st(&sym(&a, &ey), &s),
            SingletA1Aa => st(&orbital_pair(&a, &a), &s),
        }
    }
}

impl fmt::Display for TableState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn unit3(k: usize) -> CVector {
    let mut v = CVector::zeros(3);
    v[k] = r(1.0);
    v
}

fn unit2(k: usize) -> CVector {
    let mut v = CVector::zeros(2);
    v[k] = r(1.0);
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManyBodyState {
    pub state: TableState,
    pub name: &'static str,
    pub irrep: IrrepName,
    pub config: Configuration,
    pub amplitudes: CVector,
}

/// The fifteen states on the determinant basis, in table order.
///
/// For every configuration and single-valued irrep the configuration's
/// determinants are projected with the two-hole group action; each table ket
/// must lie inside the projected subspace of its labelled irrep, and the
/// normalised projection is returned.
///
/// Panics if the projection and the table disagree, which would be a logic bug.
pub fn symmetry_adapted_states() -> Vec<ManyBodyState> {
    let group = DoubleGroup::c3v();
    let dets = build_two_hole_basis();
    let mut out = Vec::with_capacity(15);
    for config in Configuration::ALL {
        let units: Vec<CVector> = dets
            .iter()
            .filter(|d| d.a_count() == config.a_count())
            .map(|d| {
                let mut v = CVector::zeros(15);
                v[d.index()] = r(1.0);
                v
            })
            .collect();
        for irrep in [IrrepName::A1, IrrepName::A2, IrrepName::E] {
            let image = group.project_in(&TwoHoleRep, &units, irrep);
            let members: Vec<TableState> =
                TableState::ALL.into_iter().filter(|s| s.config() == config && s.irrep() == irrep).collect();
            assert_eq!(image.len(), members.len(), "{irrep} image in {} has the wrong dimension", config.label());
            for s in members {
                let ket = s.table_ket();
                let ket = ket.unscale(ket.norm());
                let mut proj = CVector::zeros(15);
                for q in &image {
                    proj += q * q.dotc(&ket);
                }
                let residual = (&ket - &proj).norm();
                assert!(residual < 1e-10, "{s} is not inside its {irrep} subspace ({residual:e})");
                out.push(ManyBodyState {
                    state: s,
                    name: s.name(),
                    irrep,
                    config,
                    amplitudes: proj.unscale(proj.norm()),
                });
            }
        }
    }
    out.sort_by_key(|s| s.state);
    out
}

/// Cached copy of [`symmetry_adapted_states`].
pub fn table_states() -> &'static [ManyBodyState] {
    static STATES: OnceLock<Vec<ManyBodyState>> = OnceLock::new();
    STATES.get_or_init(symmetry_adapted_states)
}

/// 15 x n matrix whose columns are the state amplitudes.
pub fn state_matrix(states: &[ManyBodyState]) -> CMatrix {
    let cols: Vec<CVector> = states.iter().map(|s| s.amplitudes.clone()).collect();
    columns_to_matrix(&cols)
}

/// S† H S on the named states; rejects non-orthonormal input.
pub fn change_basis(h: &CMatrix, states: &[ManyBodyState]) -> Result<HamiltonianBlock> {
    let s = state_matrix(states);
    let defect = orthonormality_defect(&s);
    if defect > 1e-10 {
        return Err(Error::NotOrthonormal { defect });
    }
    let m = s.adjoint() * h * &s;
    Ok(HamiltonianBlock::new(states.iter().map(|s| s.name), m))
}

/// Transforms a determinant-basis operator to the table basis.
pub fn to_table_basis(h: &CMatrix) -> HamiltonianBlock {
    change_basis(h, table_states()).expect("table states are orthonormal")
}

/// Largest deviation of any table state from its labelled transformation law
/// over all twelve group elements. One-dimensional irreps must satisfy
/// R|ψ> = χ(R)|ψ>; each E pair must close under R with trace χ_E(R).
pub fn symmetry_defect(states: &[ManyBodyState]) -> f64 {
    let group = DoubleGroup::c3v();
    let find = |t: TableState| states.iter().find(|s| s.state == t).expect("state present");
    let mut worst: f64 = 0.0;
    for g in group.elements() {
        let m = two_hole_action(g);
        for s in states {
            let chi = group.irrep(s.irrep).characters[g.class_id.index()];
            let image = &m * &s.amplitudes;
            match s.state.partner_state() {
                None => worst = worst.max((&image - &s.amplitudes * chi).norm()),
                Some(p) => {
                    let p = find(p);
                    let a = s.amplitudes.dotc(&image);
                    let b = p.amplitudes.dotc(&image);
                    let inside = &s.amplitudes * a + &p.amplitudes * b;
                    worst = worst.max((&image - inside).norm());
                    if s.state.partner() == Some(1) {
                        let d = p.amplitudes.dotc(&(&m * &p.amplitudes));
                        worst = worst.max((a + d - chi).norm());
                    }
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::{Determinant, Orbital, Spin, SpinOrbital};
    use crate::linalg::max_abs;

    #[test]
    fn fifteen_orthonormal_states() {
        let states = symmetry_adapted_states();
        assert_eq!(states.len(), 15);
        assert!(orthonormality_defect(&state_matrix(&states)) < 1e-12);
        for (k, s) in states.iter().enumerate() {
            assert_eq!(s.state.index(), k);
        }
    }

    #[test]
    fn states_transform_per_label() {
        assert!(symmetry_defect(&symmetry_adapted_states()) < 1e-10);
    }

    #[test]
    fn triplet_minus_is_one_determinant() {
        let ex = SpinOrbital { orbital: Orbital::Ex, spin: Spin::Down }.index();
        let ey = SpinOrbital { orbital: Orbital::Ey, spin: Spin::Down }.index();
        let k = Determinant::new(ex, ey).unwrap().index();
        let s = &table_states()[TableState::TripletMinus.index()];
        assert!((s.amplitudes[k].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn change_basis_checks_orthonormality() {
        let mut states = symmetry_adapted_states();
        let id = change_basis(&CMatrix::identity(15, 15), &states).unwrap();
        assert!(max_abs(&(id.matrix - CMatrix::identity(15, 15))) < 1e-12);
        states[1].amplitudes = states[0].amplitudes.clone();
        assert!(matches!(change_basis(&CMatrix::identity(15, 15), &states), Err(Error::NotOrthonormal { .. })));
    }
}
