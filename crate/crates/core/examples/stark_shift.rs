//! Optical lines under axial and transverse electric fields.

use nalgebra::Vector3;
use nvlevels::cli::{excited_spread, linear_fit, relative_shift};
use nvlevels::nvmodel::{FineStructureParams, PiezoParams};
use nvlevels::spectra::{stark_scan, OpticalParams};

fn main() -> nvlevels::Result<()> {
    let fs = FineStructureParams::default();
    let piezo = PiezoParams::default();
    let optical = OpticalParams::default();
    let grid: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();

    let axial = stark_scan(&fs, &piezo, &optical, Vector3::z(), &grid, (0.0, 0.0))?;
    let (slope, _, _) = linear_fit(&grid, &relative_shift(&axial));
    println!("axial: relative slope {slope:.4} GHz/(MV/m), g(d-b) = {:.4}", piezo.axial_relative_slope());
    if let Some(l) = axial.line(grid.len() - 1, "Ex", "3A20") {
        println!("Ex -> 3A20 at {} MV/m: {:.3} GHz", grid[grid.len() - 1], l.frequency_ghz);
    }

    let zero = FineStructureParams::zero();
    let pre = (0.0, 0.3);
    let perp = stark_scan(&zero, &piezo, &optical, Vector3::x(), &grid, pre)?;
    let ga = piezo.g * piezo.a;
    println!("\ntransverse, 0.3 GHz pre-strain: splitting vs 2 sqrt(d^2 + (gaE)^2)");
    for (e, s) in grid.iter().zip(excited_spread(&perp)) {
        println!("{e:>5.1} {s:>9.4} {:>9.4}", 2.0 * pre.1.hypot(ga * e));
    }
    Ok(())
}
