use nalgebra::{Matrix2, Matrix4, SymmetricEigen};

use super::params::SingleParticleParams;

#[derive(Clone, Debug, PartialEq)]
pub struct SingleParticleLevels {
    pub a1_lower: f64,
    pub a1_upper: f64,
    pub ex: f64,
    pub ey: f64,
    /// a1(1) = α a_C + β a_N, a1(2) = β a_C − α a_N.
    pub alpha: f64,
    pub beta: f64,
    /// V on (σ1, σ2, σ3, σN).
    pub hamiltonian: Matrix4<f64>,
}

/// Closed-form energies and a_C/a_N mixing of the dangling-bond model.
///
/// With a_C = (σ1+σ2+σ3)/√3 the A1 block is [[v_c+2h_c, √3 h_n], [√3 h_n, v_n]],
/// so E = ½(v_c+2h_c+v_n) ∓ ½Δ with Δ = √((v_c+2h_c−v_n)² + 12h_n²) and
/// α² = ½(1 − (v_c+2h_c−v_n)/Δ), αβ = −√3 h_n/Δ for the lower level.
pub fn single_particle_levels(p: &SingleParticleParams) -> SingleParticleLevels {
    let diag_c = p.v_c + 2.0 * p.h_c;
    let split = diag_c - p.v_n;
    let delta = (split * split + 12.0 * p.h_n * p.h_n).sqrt();
    let mean = 0.5 * (diag_c + p.v_n);

    let (alpha, beta) = if delta == 0.0 {
        (1.0, 0.0)
    } else {
        let alpha2 = 0.5 * (1.0 - split / delta);
        let alpha = alpha2.max(0.0).sqrt();
        let beta_abs = (1.0 - alpha2).max(0.0).sqrt();
        // sign(β) = sign(α) · sign(−h_n); α chosen non-negative.
        let beta = if p.h_n > 0.0 { -beta_abs } else { beta_abs };
        (alpha, beta)
    };

    let mut h = Matrix4::from_diagonal(&nalgebra::Vector4::new(p.v_c, p.v_c, p.v_c, p.v_n));
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                h[(i, j)] = p.h_c;
            }
        }
        h[(i, 3)] = p.h_n;
        h[(3, i)] = p.h_n;
    }

    SingleParticleLevels {
        a1_lower: mean - 0.5 * delta,
        a1_upper: mean + 0.5 * delta,
        ex: p.v_c - p.h_c,
        ey: p.v_c - p.h_c,
        alpha,
        beta,
        hamiltonian: h,
    }
}

impl SingleParticleLevels {
    /// Sorted eigenvalues of the 4x4 bond Hamiltonian.
    pub fn numerical_energies(&self) -> [f64; 4] {
        let mut e: Vec<f64> = SymmetricEigen::new(self.hamiltonian).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        [e[0], e[1], e[2], e[3]]
    }

    /// Closed-form energies sorted ascending.
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = [self.a1_lower, self.a1_upper, self.ex, self.ey];
        e.sort_by(f64::total_cmp);
        e
    }

    /// Mixing read from the numerical eigenvector of the 2x2 A1 block.
    pub fn numerical_mixing(&self, p: &SingleParticleParams) -> (f64, f64) {
        let m = Matrix2::new(p.v_c + 2.0 * p.h_c, 3f64.sqrt() * p.h_n, 3f64.sqrt() * p.h_n, p.v_n);
        let eig = SymmetricEigen::new(m);
        let k = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
        let v = eig.eigenvectors.column(k);
        let s = if v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0) { -1.0 } else { 1.0 };
        (s * v[0], s * v[1])
    }
}
