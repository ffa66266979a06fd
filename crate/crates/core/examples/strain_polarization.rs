//! Excited-triplet branches and A2 emission polarisation against E strain.

use nvlevels::nvmodel::FineStructureParams;
use nvlevels::spectra::{axis_difference, polarization_vs_strain, strain_scan, StrainAxis};

fn main() -> nvlevels::Result<()> {
    let fs = FineStructureParams::default();
    let grid: Vec<f64> = (0..=8).map(|k| 5.0 * k as f64).collect();
    let scan = strain_scan(&fs, StrainAxis::E1, &grid)?;
    println!("{:>6} {}", "dE1", scan.branch_labels.iter().map(|l| format!("{l:>8}")).collect::<String>());
    for (d, e) in grid.iter().zip(&scan.energies) {
        println!("{d:>6.1} {}", e.iter().map(|v| format!("{v:>8.2}")).collect::<String>());
    }

    let p1 = polarization_vs_strain(&fs, StrainAxis::E1, &grid, "A2")?;
    let p2 = polarization_vs_strain(&fs, StrainAxis::E2, &grid, "A2")?;
    println!("\nA2 -> 3A2-: circular degree, linear axis (deg) for dE1 and dE2");
    for k in 0..grid.len() {
        let (a, b) = (p1[k].to_minus, p2[k].to_minus);
        let deg = |x: Option<f64>| x.map_or(f64::NAN, f64::to_degrees);
        println!(
            "{:>6.1} {:>7.3} {:>7.1} {:>7.3} {:>7.1}",
            grid[k],
            a.circular_degree,
            deg(a.linear_axis),
            b.circular_degree,
            deg(b.linear_axis)
        );
    }
    let last = grid.len() - 1;
    if let (Some(a), Some(b)) = (p1[last].to_minus.linear_axis, p2[last].to_minus.linear_axis) {
        println!("axis difference at {} GHz: {:.2} deg", grid[last], axis_difference(a, b).to_degrees());
    }
    Ok(())
}
