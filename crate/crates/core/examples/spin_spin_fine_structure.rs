//! Excited-triplet fine structure from spin-orbit plus spin-spin at zero field.

use nvlevels::linalg::eigh;
use nvlevels::nvmodel::FineStructureParams;
use nvlevels::spectra::excited_triplet_hamiltonian;

fn main() {
    let fs = FineStructureParams::default();
    let h = excited_triplet_hamiltonian(&fs);
    let (values, vectors) = eigh(&h.matrix);
    for (k, e) in values.iter().enumerate() {
        let parts: Vec<String> = h
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| vectors[(*i, k)].norm_sqr() > 1e-6)
            .map(|(i, n)| format!("{:.3} {n}", vectors[(i, k)].norm_sqr()))
            .collect();
        println!("{e:>8.3} GHz  {}", parts.join(" + "));
    }
    println!("\n4Δ' = {:.3} GHz, 3Δ = {:.3} GHz", 4.0 * fs.delta_prime, 3.0 * fs.delta);
}
