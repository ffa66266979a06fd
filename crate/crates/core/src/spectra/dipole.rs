use num_complex::Complex64;
use serde::Serialize;

use crate::fock::{embed_one_body, to_table_basis, OneBodyOperator, TableState};
use crate::linalg::{r, CMatrix, HamiltonianBlock};

use super::polarization::{Polarization, PolarizationReport};

/// Tolerance of the polarisation classes, relative to the amplitude norm.
pub const CLASS_TOLERANCE: f64 = 1e-8;

/// Orbital parts of x̂·r and ŷ·r on (ex, ey, a) with ⟨a|x|ex⟩ = ⟨a|y|ey⟩ = 1.
pub fn dipole_operators() -> [OneBodyOperator; 2] {
    let mut dx = CMatrix::zeros(3, 3);
    dx[(2, 0)] = r(1.0);
    dx[(0, 2)] = r(1.0);
    let mut dy = CMatrix::zeros(3, 3);
    dy[(2, 1)] = r(1.0);
    dy[(1, 2)] = r(1.0);
    [OneBodyOperator::orbital(dx), OneBodyOperator::orbital(dy)]
}

/// (d_x, d_y) on the fifteen table states.
pub fn dipole_blocks() -> [HamiltonianBlock; 2] {
    dipole_operators().map(|op| to_table_basis(&embed_one_body(&op)))
}

/// Emission amplitude ⟨to|d|from⟩ in units of ⟨a|x|ex⟩.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionDipole {
    pub from: &'static str,
    pub to: &'static str,
    #[serde(serialize_with = "ser_complex")]
    pub amplitude_x: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub amplitude_y: Complex64,
}

pub(crate) fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl TransitionDipole {
    pub fn polarization(&self) -> Polarization {
        Polarization::classify(self.amplitude_x, self.amplitude_y, CLASS_TOLERANCE)
    }

    pub fn report(&self) -> PolarizationReport {
        PolarizationReport::from_amplitudes(self.amplitude_x, self.amplitude_y)
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude_x == Complex64::new(0.0, 0.0) && self.amplitude_y == Complex64::new(0.0, 0.0)
    }
}

/// Amplitudes for every ordered pair of table states.
pub fn dipole_matrix() -> Vec<TransitionDipole> {
    let [dx, dy] = dipole_blocks();
    let mut out = Vec::with_capacity(225);
    for from in TableState::ALL {
        for to in TableState::ALL {
            let (i, j) = (to.index(), from.index());
            out.push(TransitionDipole {
                from: from.name(),
                to: to.name(),
                amplitude_x: clean(dx.matrix[(i, j)]),
                amplitude_y: clean(dy.matrix[(i, j)]),
            });
        }
    }
    out
}

/// Entries below 1e-12 are basis-change round-off on symmetry zeros.
fn clean(z: Complex64) -> Complex64 {
    let f = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    Complex64::new(f(z.re), f(z.im))
}

pub fn transition(from: TableState, to: TableState) -> TransitionDipole {
    dipole_matrix().into_iter().find(|t| t.from == from.name() && t.to == to.name()).expect("every pair is present")
}

/// One selection-rule entry: emitter, final state and class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SelectionRule {
    pub from: &'static str,
    pub to: &'static str,
    pub polarization: Polarization,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelectionRuleTable {
    pub name: &'static str,
    pub upper: Vec<&'static str>,
    pub lower: Vec<&'static str>,
    /// Every (upper, lower) pair, forbidden ones included.
    pub rules: Vec<SelectionRule>,
}

impl SelectionRuleTable {
    pub fn allowed(&self) -> impl Iterator<Item = &SelectionRule> {
        self.rules.iter().filter(|r| r.polarization != Polarization::Forbidden)
    }
}

fn table(name: &'static str, upper: &[TableState], lower: &[TableState]) -> SelectionRuleTable {
    let all = dipole_matrix();
    let mut rules = Vec::new();
    for u in upper {
        for l in lower {
            let t = all.iter().find(|t| t.from == u.name() && t.to == l.name()).unwrap();
            rules.push(SelectionRule { from: u.name(), to: l.name(), polarization: t.polarization() });
        }
    }
    SelectionRuleTable {
        name,
        upper: upper.iter().map(|s| s.name()).collect(),
        lower: lower.iter().map(|s| s.name()).collect(),
        rules,
    }
}

/// The three optical sub-tables: ae triplet → e² triplet, ae singlets → e²
/// singlets, a² singlet → ae singlets.
pub fn selection_rules() -> [SelectionRuleTable; 3] {
    [
        table("triplet", &TableState::EXCITED_TRIPLET, &TableState::GROUND_TRIPLET),
        table("singlet_ae_to_ee", &TableState::SINGLETS_AE, &TableState::SINGLETS_EE),
        table("singlet_aa_to_ae", &[TableState::SingletA1Aa], &TableState::SINGLETS_AE),
    ]
}

/// Dipole amplitudes that decide whether the singlets of one configuration
/// can radiate into each other.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingletTransitionReport {
    /// Largest |⟨¹E(e²)|d|¹A1(e²)⟩| over both partners and polarisations.
    pub same_configuration: f64,
    /// |⟨¹A1(e²)|d|¹Ex(ae)⟩|.
    pub cross_configuration: f64,
    /// |⟨³A20|d|Ey⟩|, the reference triplet line.
    pub triplet_reference: f64,
    /// same_configuration / triplet_reference.
    pub ratio: f64,
}

/// ¹A1(e²) ↔ ¹E(e²) shares one configuration, so a one-body dipole has no
/// matrix element between them; the ratio is exactly zero in this model.
pub fn singlet_transition_ratio() -> SingletTransitionReport {
    let amp = |a: TableState, b: TableState| {
        let t = transition(a, b);
        (t.amplitude_x.norm_sqr() + t.amplitude_y.norm_sqr()).sqrt()
    };
    let same = [TableState::SingletE1, TableState::SingletE2]
        .iter()
        .flat_map(|&e| [amp(TableState::SingletA1Ee, e), amp(e, TableState::SingletA1Ee)])
        .fold(0.0, f64::max);
    let reference = amp(TableState::Ey, TableState::TripletZero);
    SingletTransitionReport {
        same_configuration: same,
        cross_configuration: amp(TableState::SingletEx, TableState::SingletA1Ee),
        triplet_reference: reference,
        ratio: same / reference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dipole_is_hermitian_and_spin_diagonal() {
        for b in dipole_blocks() {
            assert!(b.hermitian_defect() < 1e-12);
        }
        let t = transition(TableState::A1, TableState::TripletZero);
        assert!(t.is_zero());
    }

    #[test]
    fn sigma_plus_from_a2() {
        let t = transition(TableState::A2, TableState::TripletMinus);
        assert_eq!(t.polarization(), Polarization::SigmaPlus);
    }

    #[test]
    fn same_configuration_singlets_are_dark() {
        let r = singlet_transition_ratio();
        assert_eq!(r.same_configuration, 0.0);
        assert!(r.cross_configuration > 0.1);
        assert_eq!(r.ratio, 0.0);
    }
}
