//! Optical selection rules from the dipole operator on the two-hole states.

use nvlevels::spectra::{selection_rules, singlet_transition_ratio};

fn main() {
    for t in selection_rules() {
        println!("{}", t.name);
        print!("{:>9}", "");
        for u in &t.upper {
            print!("{u:>9}");
        }
        println!();
        for l in &t.lower {
            print!("{l:>9}");
            for u in &t.upper {
                let r = t.rules.iter().find(|r| r.from == *u && r.to == *l).unwrap();
                print!("{:>9}", r.polarization.label());
            }
            println!();
        }
        println!();
    }
    let r = singlet_transition_ratio();
    println!("1A1(e2) <-> 1E(e2) amplitude: {} (ratio to triplet line {})", r.same_configuration, r.ratio);
}
