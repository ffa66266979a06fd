use std::f64::consts::SQRT_2;

use crate::fock::{orbital_pair, product_operator, restrict_to_determinants, to_table_basis, TableState};
use crate::linalg::{c, kron, r, CMatrix, CVector, HamiltonianBlock, I, ZERO};

use super::names;

/// (μ0/4π) g_e² μ_B² / h in GHz·Å³ (CODATA 2018).
pub const SPIN_SPIN_PREFACTOR_GHZ_A3: f64 = {
    let mu0_over_4pi = 1.000_000_000_55e-7;
    let g_e = 2.002_319_304_362_56;
    let mu_b = 9.274_010_078_3e-24;
    let planck = 6.626_070_15e-34;
    // Hz·m³ -> GHz·Å³
    mu0_over_4pi * g_e * g_e * mu_b * mu_b / planck * 1e21
};

/// Spin-spin block on {A1, A2, Ex, Ey, E1, E2}:
///
/// Δ on A1, A2, E1, E2; −2Δ on Ex, Ey; ∓2Δ′ on A1/A2;
/// Δ″ (|E2⟩⟨Ex| + |Ex⟩⟨E2| − i|E1⟩⟨Ey| + i|Ey⟩⟨E1|).
pub fn spin_spin_hamiltonian(delta: f64, delta_prime: f64, delta_double_prime: f64) -> HamiltonianBlock {
    let mut m = CMatrix::zeros(6, 6);
    let d = [delta - 2.0 * delta_prime, delta + 2.0 * delta_prime, -2.0 * delta, -2.0 * delta, delta, delta];
    for (k, v) in d.iter().enumerate() {
        m[(k, k)] = r(*v);
    }
    let (ex, ey, e1, e2) = (2, 3, 4, 5);
    m[(e2, ex)] = r(delta_double_prime);
    m[(ex, e2)] = r(delta_double_prime);
    m[(e1, ey)] = c(0.0, -delta_double_prime);
    m[(ey, e1)] = c(0.0, delta_double_prime);
    HamiltonianBlock::new(names(&TableState::EXCITED_TRIPLET), m)
}

/// Σ_k spatial_k ⊗ spin_k with spatial parts on the two-hole orbital states
/// (|X⟩, |Y⟩) = (|a ex − ex a⟩, |a ey − ey a⟩)/√2 and spin parts on
/// (αα, αβ, βα, ββ).
#[derive(Clone, Debug, Default)]
pub struct SpatialSpinOperator {
    pub terms: Vec<(CMatrix, CMatrix)>,
}

fn spin_ops() -> (CMatrix, CMatrix, CMatrix) {
    let sp = CMatrix::from_row_slice(2, 2, &[ZERO, r(1.0), ZERO, ZERO]);
    let sm = CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, r(1.0), ZERO]);
    let sz = CMatrix::from_row_slice(2, 2, &[r(0.5), ZERO, ZERO, r(-0.5)]);
    (sp, sm, sz)
}

fn xy(xx: f64, xy_: f64, yx: f64, yy: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[r(xx), r(xy_), r(yx), r(yy)])
}

impl SpatialSpinOperator {
    /// Dipolar spin-spin coupling of the two holes with the spatial kernels
    /// replaced by their symmetry-allowed expectation values on {X, Y}.
    ///
    /// Δ″ is the parameter ⟨X|3x̂ẑ/(√2 r³)|X⟩ (times the magnetic prefactor); the
    /// xz/yz kernel map then carries −Δ″/√2.
    pub fn from_dipolar(delta: f64, delta_prime: f64, delta_double_prime: f64) -> Self {
        let (sp, sm, sz) = spin_ops();
        let k1 = kron(&sp, &sm) + kron(&sm, &sp) - kron(&sz, &sz) * r(4.0);
        let k2 = kron(&sm, &sm) + kron(&sp, &sp);
        let k3 = kron(&sm, &sm) - kron(&sp, &sp);
        let k4 = kron(&sm, &sz) + kron(&sz, &sm) + kron(&sp, &sz) + kron(&sz, &sp);
        let k5 = kron(&sm, &sz) + kron(&sz, &sm) - kron(&sp, &sz) - kron(&sz, &sp);
        let cc = -delta_double_prime / SQRT_2;
        let terms = vec![
            (xy(1.0, 0.0, 0.0, 1.0) * r(-delta), k1),
            (xy(1.0, 0.0, 0.0, -1.0) * r(-delta_prime), k2),
            (xy(0.0, 1.0, 1.0, 0.0) * c(0.0, -delta_prime), k3),
            (xy(-1.0, 0.0, 0.0, 1.0) * r(-cc), k4),
            (xy(0.0, 1.0, 1.0, 0.0) * c(0.0, -cc), k5),
        ];
        SpatialSpinOperator { terms }
    }

    /// λz i(|X⟩⟨Y| − |Y⟩⟨X|) ⊗ (|αα⟩⟨αα| − |ββ⟩⟨ββ|).
    pub fn axial_spin_orbit(lambda_z: f64) -> Self {
        let spatial = xy(0.0, 1.0, -1.0, 0.0) * (I * lambda_z);
        let mut spin = CMatrix::zeros(4, 4);
        spin[(0, 0)] = r(1.0);
        spin[(3, 3)] = r(-1.0);
        SpatialSpinOperator { terms: vec![(spatial, spin)] }
    }

    pub fn plus(mut self, other: SpatialSpinOperator) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// The operator on the fifteen-determinant basis.
    pub fn to_determinants(&self) -> CMatrix {
        let a = unit3(2);
        let x = (orbital_pair(&a, &unit3(0)) - orbital_pair(&unit3(0), &a)).unscale(SQRT_2);
        let y = (orbital_pair(&a, &unit3(1)) - orbital_pair(&unit3(1), &a)).unscale(SQRT_2);
        let kets = [x, y];
        let mut out = CMatrix::zeros(15, 15);
        for (spatial, spin) in &self.terms {
            let mut o9 = CMatrix::zeros(9, 9);
            for p in 0..2 {
                for q in 0..2 {
                    o9 += &kets[p] * kets[q].adjoint() * spatial[(p, q)];
                }
            }
            out += restrict_to_determinants(&product_operator(&o9, spin));
        }
        out
    }

    /// Restriction to {A1, A2, Ex, Ey, E1, E2} through the table states.
    pub fn excited_triplet_block(&self) -> HamiltonianBlock {
        to_table_basis(&self.to_determinants()).restrict(&names(&TableState::EXCITED_TRIPLET))
    }

    /// Σ_k Tr(ρ spatial_k) spin_k: the spin operator left after averaging the
    /// spatial part over the 2x2 density matrix ρ on {X, Y}.
    pub fn spatial_average(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(4, 4);
        for (spatial, spin) in &self.terms {
            out += spin * (rho * spatial).trace();
        }
        out
    }

    /// Spatial average over the equal mixture (|X⟩⟨X| + |Y⟩⟨Y|)/2.
    pub fn thermal_average(&self) -> CMatrix {
        self.spatial_average(&(CMatrix::identity(2, 2) * r(0.5)))
    }
}

fn unit3(k: usize) -> CVector {
    let mut v = CVector::zeros(3);
    v[k] = r(1.0);
    v
}

/// −Δ (|αα⟩⟨αα| + |ββ⟩⟨ββ| − 2|T0⟩⟨T0|) with |T0⟩ = (|αβ⟩ + |βα⟩)/√2:
/// the zero-field-splitting operator on two spins.
pub fn zero_field_splitting_spin(delta: f64) -> CMatrix {
    let (sp, sm, sz) = spin_ops();
    (kron(&sp, &sm) + kron(&sm, &sp) - kron(&sz, &sz) * r(4.0)) * r(-delta)
}
