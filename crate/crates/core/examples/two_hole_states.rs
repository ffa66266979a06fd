//! Builds the fifteen two-hole states by projection and lists their
//! determinant content.

use nvlevels::fock::{build_two_hole_basis, symmetry_defect, table_states};

fn main() {
    let dets = build_two_hole_basis();
    let states = table_states();
    for s in states {
        let terms: Vec<String> = s
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 1e-12)
            .map(|(k, z)| format!("({:+.3}{:+.3}i){}", z.re, z.im, dets[k]))
            .collect();
        println!("{:>8} {:>3} {:>3}  {}", s.name, s.irrep.label(), s.config.label(), terms.join(" "));
    }
    println!("\nlargest symmetry defect: {:.1e}", symmetry_defect(states));
}
