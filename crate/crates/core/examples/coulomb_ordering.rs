//! Coulomb integrals over Gaussian dangling-bond orbitals and the resulting
//! e² ordering ³A2 < ¹E < ¹A1.

use nvlevels::quad::{build_orbitals, coulomb_tensor, DefectGeometry, GaussianOrbitalModel, QuadratureSpec};

fn main() -> nvlevels::Result<()> {
    let geom = DefectGeometry::default();
    let orbitals = build_orbitals(&geom, &GaussianOrbitalModel::default())?;
    let spec = QuadratureSpec { samples: 1 << 18, ..Default::default() };
    let c = coulomb_tensor(&orbitals, &spec)?;
    for (label, e) in &c.integrals {
        println!("{label:>8} = {:>10.0} ± {:.0} GHz", e.value, e.error);
    }
    let rel = c.expectations().relative();
    let e = c.exchange();
    let split = c.partner_splitting();
    println!("\nexchange e = {:.0} ± {:.0} GHz", e.value, e.error);
    println!(
        "3A2 : 1E : 1A1 = 0 : {:.0} : {:.0} GHz (2e, 4e = {:.0}, {:.0})",
        rel[1],
        rel[2],
        2.0 * e.value,
        4.0 * e.value
    );
    println!("1E1 - 1E2 = {:.0} ± {:.0} GHz", split.value, split.error);
    Ok(())
}
