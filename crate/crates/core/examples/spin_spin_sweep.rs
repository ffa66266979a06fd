//! Spin-spin parameters of the excited triplet against the nitrogen
//! population of the a1 orbital.

use nvlevels::quad::{spin_spin_sweep, sweep_trends, DefectGeometry, GaussianOrbitalModel, QuadratureSpec};

fn main() -> nvlevels::Result<()> {
    let geom = DefectGeometry::default();
    let width = GaussianOrbitalModel::default().width;
    let pops: Vec<f64> = (0..=5).map(|k| 0.2 * k as f64).collect();
    let spec = QuadratureSpec { samples: 1 << 18, ..Default::default() };
    let points = spin_spin_sweep(&geom, width, &pops, &spec)?;
    println!("{:>5} {:>15} {:>15} {:>15}", "p_N", "Δ (GHz)", "Δ′ (GHz)", "Δ″ (GHz)");
    for p in &points {
        let e = &p.estimate;
        let f = |x: &nvlevels::quad::Estimate| format!("{:+.3}±{:.3}", x.value, x.error);
        println!(
            "{:>5.1} {:>15} {:>15} {:>15}",
            p.nitrogen_population,
            f(&e.delta),
            f(&e.delta_prime),
            f(&e.delta_double_prime)
        );
    }
    for t in sweep_trends(&points) {
        println!("{}: {:?}, sign changes at {:?}", t.parameter, t.monotonicity, t.sign_changes);
    }
    Ok(())
}
