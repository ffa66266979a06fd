//! Spin-orbit couplings: the axial block of the excited triplet and every
//! pair of states linked by the full operator.

use nvlevels::nvmodel::{excited_triplet_spin_orbit, nonradiative_links};

fn main() {
    let (lxy, lz) = (7.3, 5.5);
    let h = excited_triplet_spin_orbit(lz);
    for (i, n) in h.basis.iter().enumerate() {
        println!("{n:>3} {:+.2}", h.matrix[(i, i)].re);
    }
    println!("\n{:>8} {:>8} {:>8} {:>8}", "from", "to", "axial", "transv");
    for l in nonradiative_links(lxy, lz) {
        println!("{:>8} {:>8} {:>8.3} {:>8.3}", l.from.name(), l.to.name(), l.axial, l.non_axial);
    }
}
