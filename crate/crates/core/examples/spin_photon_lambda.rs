//! The A2 Λ-scheme: A2 decays to ³A2− with σ+ and to ³A2+ with σ− light,
//! entangling the ground spin with the photon polarisation.

use nvlevels::fock::TableState;
use nvlevels::spectra::transition;

fn main() {
    for g in [TableState::TripletMinus, TableState::TripletZero, TableState::TripletPlus] {
        let t = transition(TableState::A2, g);
        let r = t.report();
        println!(
            "A2 -> {:<5} {:<10} amplitude ({:+.3}{:+.3}i, {:+.3}{:+.3}i) intensity {:.3}",
            g.name(),
            t.polarization().label(),
            t.amplitude_x.re,
            t.amplitude_x.im,
            t.amplitude_y.re,
            t.amplitude_y.im,
            r.intensity
        );
    }
    let minus = transition(TableState::A2, TableState::TripletMinus).report().intensity;
    let plus = transition(TableState::A2, TableState::TripletPlus).report().intensity;
    println!("branching ratio to 3A2- : 3A2+ = {:.3}", minus / plus);
}
