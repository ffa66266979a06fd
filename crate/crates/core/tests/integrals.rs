mod support;

use nalgebra::Vector3;
use nvlevels::nvmodel::SPIN_SPIN_PREFACTOR_GHZ_A3;
use nvlevels::quad::{
    build_orbitals, build_orbitals_mirror_symmetric, coulomb_tensor, spin_spin_parameters, spin_spin_sweep,
    sweep_trends, DefectGeometry, DefectOrbitals, Estimate, GaussianOrbital, GaussianOrbitalModel, QuadratureSpec,
    COULOMB_GHZ_ANGSTROM,
};
use nvlevels::Error;

fn spec() -> QuadratureSpec {
    QuadratureSpec { samples: 1 << 18, batches: 32, ..Default::default() }
}

/// Within k standard errors plus a small systematic allowance for the
/// extrapolation of the regularised kernel.
fn agrees(e: &Estimate, oracle: f64, k: f64, systematic: f64) -> bool {
    (e.value - oracle).abs() <= k * e.error + systematic
}

#[test]
fn physical_constants_agree() {
    assert!((COULOMB_GHZ_ANGSTROM / support::coulomb_ghz_angstrom() - 1.0).abs() < 1e-8);
    assert!((SPIN_SPIN_PREFACTOR_GHZ_A3 / support::dipolar_ghz_angstrom3() - 1.0).abs() < 1e-8);
}

#[test]
fn coulomb_integrals_match_closed_form() {
    let o = build_orbitals(&DefectGeometry::default(), &GaussianOrbitalModel::default()).unwrap();
    let c = coulomb_tensor(&o, &spec()).unwrap();
    let want = support::coulomb_set(&o);
    let scale = want.iter().map(|v| v.abs()).fold(0.0, f64::max);
    for ((label, e), w) in c.integrals.iter().zip(want) {
        assert!(agrees(e, w, 5.0, 1e-3 * scale), "{label}: {e:?} vs {w}");
    }
}

#[test]
fn spin_spin_matches_closed_form_across_nitrogen_population() {
    let geom = DefectGeometry::default();
    let width = GaussianOrbitalModel::default().width;
    for p in [0.0, 0.3, 1.0] {
        let o = build_orbitals(&geom, &GaussianOrbitalModel::new(width, p).unwrap()).unwrap();
        let mc = spin_spin_parameters(&o, &spec()).unwrap();
        let [d, dp, dpp, tr] = support::spin_spin_oracle(&o);
        assert!(tr.abs() < 1e-9);
        let scale = d.abs().max(dp.abs()).max(dpp.abs());
        let sys = 0.02 * scale;
        assert!(agrees(&mc.delta, d, 4.0, sys), "p_N {p}: Δ {:?} vs {d}", mc.delta);
        assert!(agrees(&mc.delta_prime, dp, 4.0, sys), "p_N {p}: Δ′ {:?} vs {dp}", mc.delta_prime);
        assert!(agrees(&mc.delta_double_prime, dpp, 4.0, sys), "p_N {p}: Δ″ {:?} vs {dpp}", mc.delta_double_prime);
    }
}

#[test]
fn mirror_symmetric_model_has_no_delta_double_prime() {
    let o = build_orbitals_mirror_symmetric(&DefectGeometry::default(), &GaussianOrbitalModel::default()).unwrap();
    let [_, _, dpp, _] = support::spin_spin_oracle(&o);
    assert!(dpp.abs() < 1e-10, "closed form gives {dpp}");
    let mc = spin_spin_parameters(&o, &spec()).unwrap();
    let d = mc.delta_double_prime;
    assert!(d.consistent_with_zero(3.0) || d.value.abs() < 1e-12, "{d:?}");
}

#[test]
fn exchange_vanishes_for_disjoint_distant_sites() {
    let w = GaussianOrbitalModel::default().width;
    let o = DefectOrbitals {
        ex: GaussianOrbital::site(Vector3::new(12.0, 0.0, 0.0), w),
        ey: GaussianOrbital::site(Vector3::new(-12.0, 0.0, 0.0), w),
        a: GaussianOrbital::site(Vector3::new(0.0, 0.0, 1.0), w),
    };
    // (ρ_xy|ρ_xy) against (ρ_xx|ρ_yy)
    let exchange = support::coulomb_integral(&o, 0, 0, 1, 1);
    let direct = support::coulomb_integral(&o, 0, 1, 0, 1);
    assert!(exchange.abs() < 1e-12 * direct, "exchange {exchange} vs direct {direct}");
    let c = coulomb_tensor(&o, &spec()).unwrap();
    let mc = c.exchange();
    assert!(mc.value.abs() < 1e-9 * c.integrals[3].1.value, "{mc:?}");
}

#[test]
fn independent_seeds_agree_within_error() {
    let o = build_orbitals(&DefectGeometry::default(), &GaussianOrbitalModel::default()).unwrap();
    let a = spin_spin_parameters(&o, &spec().with_seed(1)).unwrap();
    let b = spin_spin_parameters(&o, &spec().with_seed(2)).unwrap();
    assert_ne!(a.delta.value, b.delta.value);
    for (x, y) in [(a.delta, b.delta), (a.delta_prime, b.delta_prime), (a.delta_double_prime, b.delta_double_prime)] {
        let sigma = x.error.hypot(y.error);
        assert!((x.value - y.value).abs() <= 4.0 * sigma, "{x:?} vs {y:?}");
    }
}

#[test]
fn fixed_seed_is_bitwise_reproducible() {
    let o = build_orbitals(&DefectGeometry::default(), &GaussianOrbitalModel::default()).unwrap();
    let a = spin_spin_parameters(&o, &spec()).unwrap();
    let b = spin_spin_parameters(&o, &spec()).unwrap();
    assert_eq!(a, b);
    let c1 = coulomb_tensor(&o, &spec()).unwrap();
    let c2 = coulomb_tensor(&o, &spec()).unwrap();
    assert_eq!(c1.integrals, c2.integrals);
}

#[test]
fn sweep_follows_closed_form_trend() {
    let geom = DefectGeometry::default();
    let width = GaussianOrbitalModel::default().width;
    let pops = [0.0, 0.25, 0.5, 0.75, 1.0];
    let points = spin_spin_sweep(&geom, width, &pops, &spec()).unwrap();
    let trends = sweep_trends(&points);
    for t in &trends {
        let f = |p: f64| {
            let o = build_orbitals(&geom, &GaussianOrbitalModel::new(width, p).unwrap()).unwrap();
            let v = support::spin_spin_oracle(&o);
            match t.parameter {
                "delta" => v[0],
                "delta_prime" => v[1],
                _ => v[2],
            }
        };
        let closed: Vec<f64> = pops.iter().map(|&p| f(p)).collect();
        let increasing = closed.windows(2).all(|w| w[1] >= w[0]);
        let decreasing = closed.windows(2).all(|w| w[1] <= w[0]);
        let want = match (increasing, decreasing) {
            (true, false) => "Increasing",
            (false, true) => "Decreasing",
            _ => "Mixed",
        };
        assert_eq!(format!("{:?}", t.monotonicity), want, "{}: {closed:?}", t.parameter);
    }
}

#[test]
fn degenerate_geometry_is_rejected() {
    let model = GaussianOrbitalModel::default();
    assert!(matches!(DefectGeometry::tetrahedral(-1.0), Err(Error::Geometry(_))));
    assert!(GaussianOrbitalModel::new(0.8, 1.5).is_err());
    let bad = QuadratureSpec { batches: 1, ..spec() };
    let o = build_orbitals(&DefectGeometry::default(), &model).unwrap();
    assert!(matches!(spin_spin_parameters(&o, &bad), Err(Error::Config(_))));
}
