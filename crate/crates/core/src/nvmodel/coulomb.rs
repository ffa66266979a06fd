use serde::Serialize;

use crate::fock::TwoBodyTensor;

/// Coulomb expectation values of the e² states.
///
/// Labels follow the table kets: ¹E1 = |xx − yy⟩, ¹E2 = |xy + yx⟩.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoulombExpectations {
    pub triplet: f64,
    pub singlet_e1: f64,
    pub singlet_e2: f64,
    pub singlet_a1: f64,
    /// e = (C_xxyy + C_yyxx)/2
    pub exchange: f64,
}

const X: usize = 0;
const Y: usize = 1;

pub fn coulomb_expectations(t: &TwoBodyTensor) -> CoulombExpectations {
    let c = |a, b, cc, d| t.get(a, b, cc, d).re;
    CoulombExpectations {
        triplet: (c(X, Y, X, Y) - c(X, Y, Y, X) - c(Y, X, X, Y) + c(Y, X, Y, X)) / 2.0,
        singlet_e1: (c(X, X, X, X) - c(X, X, Y, Y) - c(Y, Y, X, X) + c(Y, Y, Y, Y)) / 2.0,
        singlet_e2: (c(X, Y, X, Y) + c(X, Y, Y, X) + c(Y, X, X, Y) + c(Y, X, Y, X)) / 2.0,
        singlet_a1: (c(X, X, X, X) + c(X, X, Y, Y) + c(Y, Y, X, X) + c(Y, Y, Y, Y)) / 2.0,
        exchange: (c(X, X, Y, Y) + c(Y, Y, X, X)) / 2.0,
    }
}

impl CoulombExpectations {
    /// Energies of ³A2, ¹E (mean of the partners) and ¹A1 relative to ³A2.
    pub fn relative(&self) -> [f64; 3] {
        let e = 0.5 * (self.singlet_e1 + self.singlet_e2);
        [0.0, e - self.triplet, self.singlet_a1 - self.triplet]
    }

    /// Relative energies predicted from the exchange energy alone: {0, 2e, 4e}.
    pub fn exchange_ladder(&self) -> [f64; 3] {
        [0.0, 2.0 * self.exchange, 4.0 * self.exchange]
    }

    pub fn e_partner_splitting(&self) -> f64 {
        self.singlet_e1 - self.singlet_e2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::r;

    #[test]
    fn zero_tensor() {
        let e = coulomb_expectations(&TwoBodyTensor::zero());
        assert_eq!(e.relative(), [0.0, 0.0, 0.0]);
        assert_eq!(e.exchange, 0.0);
    }

    #[test]
    fn exchange_identity_for_real_tensor() {
        let t = TwoBodyTensor::symmetrized(|a, b, c, d| r(1.0 + (a * 27 + b * 9 + c * 3 + d) as f64 * 0.01));
        let e = coulomb_expectations(&t);
        assert!(((e.singlet_a1 - e.singlet_e1) - (e.singlet_e2 - e.triplet)).abs() < 1e-12);
    }
}
