//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the per-check details.

use std::time::{Duration, Instant};

use nvlevels::cli::{validate_group, Check, RunConfig};
use nvlevels::nvmodel::PiezoParams;
use nvlevels::quad::{spin_spin_sweep, sweep_trends, DefectGeometry, GaussianOrbitalModel};

struct Criterion {
    number: usize,
    title: &'static str,
    group: &'static str,
    budget: Duration,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { number: 1, title: "group core", group: "group", budget: Duration::from_secs(1) },
    Criterion { number: 2, title: "state construction", group: "states", budget: Duration::from_secs(1) },
    Criterion { number: 3, title: "Coulomb ordering", group: "coulomb", budget: Duration::from_secs(120) },
    Criterion { number: 4, title: "spin-orbit", group: "spin-orbit", budget: Duration::from_secs(1) },
    Criterion { number: 5, title: "spin-spin", group: "spin-spin", budget: Duration::from_secs(10) },
    Criterion { number: 6, title: "selection rules", group: "selection", budget: Duration::from_secs(1) },
    Criterion { number: 7, title: "strain", group: "strain", budget: Duration::from_secs(10) },
    Criterion { number: 8, title: "Stark", group: "stark", budget: Duration::from_secs(10) },
    Criterion { number: 9, title: "spin-spin integrals", group: "integrals", budget: Duration::from_secs(300) },
];

fn extra_checks(number: usize, config: &RunConfig, notes: &mut Vec<String>) -> Vec<Check> {
    match number {
        7 => {
            // Diagnostic only: the two-level A2/Ey mixing gives the analytic curve
            // λz/√(λz² + δ²), which stays above 0.2 until δ ≈ 26.9 GHz.
            let lz: f64 = 5.5;
            let at20 = lz / lz.hypot(20.0);
            let crossing = lz * (1.0 / 0.04 - 1.0f64).sqrt();
            notes.push(format!(
                "analytic circular degree at δE1 = 20 GHz is {at20:.4}; it drops below 0.2 at δ = {crossing:.1} GHz"
            ));
            notes.push(
                "E-type strain angle maps to half the angle in the xy plane, so δE1 vs δE2 rotates the axis by 45°"
                    .into(),
            );
            Vec::new()
        }
        8 => {
            let p = PiezoParams::default();
            let slope = p.axial_relative_slope();
            let estimate = 4.0;
            let ratio = slope / estimate;
            vec![Check {
                group: "stark",
                name: "g(d − b) within a factor 2 of the 4 GHz/(MV/m) estimate".into(),
                passed: (0.5..=2.0).contains(&ratio),
                detail: format!("{slope:.3} GHz/(MV/m), ratio {ratio:.3}"),
            }]
        }
        9 => {
            let res = (|| {
                let geom = DefectGeometry::default();
                let width = GaussianOrbitalModel::for_geometry(&geom, 0.3)?.width;
                let pops = config.spin_spin.nitrogen_population.values();
                let points = spin_spin_sweep(&geom, width, &pops, &config.quadrature)?;
                Ok::<_, nvlevels::Error>((points.len(), sweep_trends(&points)))
            })();
            match res {
                Ok((n, trends)) => {
                    let summary: Vec<String> =
                        trends.iter().map(|t| format!("{} {:?}", t.parameter, t.monotonicity)).collect();
                    vec![Check {
                        group: "integrals",
                        name: "nitrogen-population sweep emits a dataset with trends".into(),
                        passed: n == pops_len(config) && trends.len() == 3,
                        detail: format!("{n} points; {}", summary.join(", ")),
                    }]
                }
                Err(e) => vec![Check {
                    group: "integrals",
                    name: "nitrogen-population sweep".into(),
                    passed: false,
                    detail: format!("error: {e}"),
                }],
            }
        }
        _ => Vec::new(),
    }
}

fn pops_len(config: &RunConfig) -> usize {
    config.spin_spin.nitrogen_population.values().len()
}

#[test]
fn acceptance() {
    let config = RunConfig::default();
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let mut checks = validate_group(c.group, &config).expect("known group").checks;
        let mut notes = Vec::new();
        checks.extend(extra_checks(c.number, &config, &mut notes));
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let ok = checks.iter().all(|k| k.passed) && in_time;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {} ({} checks, {:.2} s of {} s)",
            c.number,
            c.title,
            checks.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for k in &checks {
            let t = if k.passed { "ok  " } else { "FAIL" };
            println!("    {t} {}: {}", k.name, k.detail);
        }
        for n in &notes {
            println!("    note: {n}");
        }
        if !ok {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "criteria failing: {failed:?}");
}
