//! Closed-form two-electron integrals between Gaussian-mixture densities,
//! written independently of the Monte Carlo code in the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use nvlevels::quad::{DefectOrbitals, GaussianOrbital};

/// e²/(4πε0) in GHz·Å from the SI constants.
pub fn coulomb_ghz_angstrom() -> f64 {
    let e = 1.602_176_634e-19;
    let k = 8.987_551_792_3e9;
    let h = 6.626_070_15e-34;
    e * e * k / h * 1e10 / 1e9
}

/// (μ0/4π)(g_e μ_B)²/h in GHz·Å³.
pub fn dipolar_ghz_angstrom3() -> f64 {
    let g: f64 = 2.002_319_304_362_56;
    let mu_b = 9.274_010_078_3e-24;
    let h = 6.626_070_15e-34;
    1e-7 * (g * mu_b).powi(2) / h * 1e30 / 1e9
}

/// φψ as weighted normal densities of variance w²/2: (weight, centre).
pub fn product(phi: &GaussianOrbital, psi: &GaussianOrbital) -> Vec<(f64, Vector3<f64>)> {
    let w = phi.width;
    let mut out = Vec::new();
    for (a, ra) in &phi.terms {
        for (b, rb) in &psi.terms {
            let overlap = (-(ra - rb).norm_squared() / (4.0 * w * w)).exp();
            out.push((a * b * overlap, (ra + rb) / 2.0));
        }
    }
    out
}

/// E[1/|d|] for d ~ N(μ, σ²I).
pub fn gaussian_inverse_distance(mu: &Vector3<f64>, sigma: f64) -> f64 {
    let r = mu.norm();
    let a = 1.0 / (2f64.sqrt() * sigma);
    if r < 1e-9 {
        2.0 * a / PI.sqrt()
    } else {
        libm::erf(a * r) / r
    }
}

/// E[(3d̂d̂ − I)/|d|³] for d ~ N(μ, σ²I), the angular average over a small
/// sphere around d = 0 taken as zero. Equals the Hessian of E[1/|d|] plus the
/// contact term (4π/3)ρ(0)I.
pub fn gaussian_dipolar(mu: &Vector3<f64>, sigma: f64) -> Matrix3<f64> {
    let r = mu.norm();
    let a = 1.0 / (2f64.sqrt() * sigma);
    let rho0 = (2.0 * PI * sigma * sigma).powf(-1.5) * (-r * r / (2.0 * sigma * sigma)).exp();
    let contact = Matrix3::identity() * (4.0 * PI / 3.0 * rho0);
    if r < 1e-9 {
        let f2 = -2.0 * a * a * a / (3.0 * PI.sqrt()) * 2.0;
        return Matrix3::identity() * f2 + contact;
    }
    let g = 2.0 * a / PI.sqrt() * (-a * a * r * r).exp();
    let erf = libm::erf(a * r);
    let f1 = g / r - erf / (r * r);
    let f2 = -2.0 * a * a * g - 2.0 * g / (r * r) + 2.0 * erf / (r * r * r);
    let n = mu / r;
    let nn = n * n.transpose();
    nn * f2 + (Matrix3::identity() - nn) * (f1 / r) + contact
}

/// ∫∫ P(r1) Q(r2) K(r1 − r2) with both densities of variance w²/2 per axis.
fn two_body<T, F>(p: &[(f64, Vector3<f64>)], q: &[(f64, Vector3<f64>)], w: f64, zero: T, kernel: F) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    F: Fn(&Vector3<f64>, f64) -> T,
{
    let mut acc = zero;
    for (wp, mp) in p {
        for (wq, mq) in q {
            acc = acc + kernel(&(mp - mq), w) * (wp * wq);
        }
    }
    acc
}

/// (ρ_ac | ρ_bd) in GHz for the orbitals (ex, ey) indexed 0 and 1.
pub fn coulomb_integral(o: &DefectOrbitals, a: usize, b: usize, c: usize, d: usize) -> f64 {
    let orb = [&o.ex, &o.ey];
    let w = o.width();
    let p = product(orb[a], orb[c]);
    let q = product(orb[b], orb[d]);
    coulomb_ghz_angstrom() * two_body(&p, &q, w, 0.0, gaussian_inverse_distance)
}

/// The six distinct integrals in the order (xx|xx), (yy|yy), (xy|xy), (xx|yy), (xx|xy), (yy|xy).
pub fn coulomb_set(o: &DefectOrbitals) -> [f64; 6] {
    let c = |a, b, cc, d| coulomb_integral(o, a, b, cc, d);
    [c(0, 0, 0, 0), c(1, 1, 1, 1), c(0, 0, 1, 1), c(0, 1, 0, 1), c(0, 0, 0, 1), c(1, 1, 0, 1)]
}

/// ⟨X|(3d̂d̂ − I)/r³|X⟩ for |X⟩ the antisymmetric spatial state of a and ex, Å⁻³.
pub fn dipolar_tensor(o: &DefectOrbitals) -> Matrix3<f64> {
    let w = o.width();
    let aa = product(&o.a, &o.a);
    let xx = product(&o.ex, &o.ex);
    let ax = product(&o.a, &o.ex);
    two_body(&aa, &xx, w, Matrix3::zeros(), gaussian_dipolar)
        - two_body(&ax, &ax, w, Matrix3::zeros(), gaussian_dipolar)
}

/// (Δ, Δ′, Δ″, trace) in GHz.
pub fn spin_spin_oracle(o: &DefectOrbitals) -> [f64; 4] {
    let t = dipolar_tensor(o);
    let p = dipolar_ghz_angstrom3();
    [-p * t[(2, 2)] / 4.0, p * (t[(0, 0)] - t[(1, 1)]) / 4.0, p * t[(0, 2)] / 2f64.sqrt(), -p * t.trace() / 4.0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dipolar_is_traceless_and_matches_point_limit() {
        let mu = Vector3::new(0.3, -0.2, 2.5);
        let t = gaussian_dipolar(&mu, 0.05);
        assert!(t.trace().abs() < 1e-12);
        let r = mu.norm();
        let point = (mu * mu.transpose() * 3.0 / (r * r) - Matrix3::identity()) / (r * r * r);
        assert!((t - point).abs().max() < 1e-9);
    }
}
