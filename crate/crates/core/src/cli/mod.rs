//! JSON configuration, the six `nvlevels` subcommands and their CSV/JSON outputs.
//!
//! Every output file starts with the SHA-256 of the effective configuration
//! and a full echo of it; identical configs and seeds give byte-identical files.

mod config;
mod output;
mod validate;

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::fock::{build_two_hole_basis, table_states, TableState};
use crate::nvmodel::single_particle_levels;
use crate::quad::{build_orbitals, coulomb_tensor, spin_spin_sweep, sweep_trends, Estimate, SpinSpinSweepPoint, Trend};
use crate::spectra::{
    level_table, polarization_vs_strain, selection_rules, singlet_transition_ratio, stark_scan, strain_scan,
    LevelEntry, SelectionRuleTable, SingletTransitionReport, StarkScan, StrainAxis, TransitionDipole,
};
use crate::{Error, Result};

pub use config::{OrbitalConfig, Range, RunConfig, SpinSpinConfig, StarkScanConfig, StrainScanConfig};
pub use output::{config_hash, write_csv, write_json, Provenance};
pub use validate::{validate, validate_group, Check, ValidationReport, CHECK_GROUPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Levels,
    SelectionRules,
    StrainScan,
    StarkScan,
    SpinSpin,
    Validate,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Levels,
        Subcommand::SelectionRules,
        Subcommand::StrainScan,
        Subcommand::StarkScan,
        Subcommand::SpinSpin,
        Subcommand::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Levels => "levels",
            Subcommand::SelectionRules => "selection-rules",
            Subcommand::StrainScan => "strain-scan",
            Subcommand::StarkScan => "stark-scan",
            Subcommand::SpinSpin => "spin-spin",
            Subcommand::Validate => "validate",
        }
    }
}

/// What a run produced.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    /// Present for `validate`.
    pub report: Option<ValidationReport>,
}

impl RunOutput {
    pub fn success(&self) -> bool {
        self.report.as_ref().is_none_or(|r| r.passed())
    }
}

/// Loads the config, applies the seed override and runs one subcommand.
pub fn run(command: Subcommand, config_path: &Path, out_dir: &Path, seed: Option<u64>) -> Result<RunOutput> {
    let mut config = RunConfig::load(config_path)?;
    if let Some(s) = seed {
        config.quadrature.seed = s;
    }
    run_config(command, &config, out_dir)
}

pub fn run_config(command: Subcommand, config: &RunConfig, out_dir: &Path) -> Result<RunOutput> {
    config.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let prov = Provenance::new(command.name(), config)?;
    let mut report = None;
    let files = match command {
        Subcommand::Levels => vec![levels(config, out_dir, &prov)?],
        Subcommand::SelectionRules => vec![selection(out_dir, &prov)?],
        Subcommand::StrainScan => strain(config, out_dir, &prov)?,
        Subcommand::StarkScan => stark(config, out_dir, &prov)?,
        Subcommand::SpinSpin => spin_spin(config, out_dir, &prov)?,
        Subcommand::Validate => {
            let r = validate(config);
            let path = write_json(out_dir, "validate.json", &prov, &r)?;
            report = Some(r);
            vec![path]
        }
    };
    Ok(RunOutput { files, report })
}

#[derive(Serialize)]
struct ExchangeSource {
    value_ghz: f64,
    error_ghz: f64,
    source: &'static str,
}

#[derive(Serialize)]
struct LevelRecord {
    name: &'static str,
    irrep: &'static str,
    config: &'static str,
    multiplicity: u8,
    energy_ghz: f64,
    configuration_energy_ghz: f64,
    coulomb_ghz: f64,
    fine_structure_ghz: f64,
    /// [re, im] on each determinant, in `determinants` order.
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct SingleParticleRecord {
    a1_lower: f64,
    a1_upper: f64,
    ex: f64,
    ey: f64,
    alpha: f64,
    beta: f64,
}

#[derive(Serialize)]
struct LevelsData {
    exchange: ExchangeSource,
    single_particle: SingleParticleRecord,
    determinants: Vec<String>,
    levels: Vec<LevelRecord>,
}

fn exchange(config: &RunConfig) -> Result<ExchangeSource> {
    if let Some(e) = config.exchange_ghz {
        return Ok(ExchangeSource { value_ghz: e, error_ghz: 0.0, source: "config" });
    }
    let geom = config.orbitals.geometry()?;
    let orbitals = build_orbitals(&geom, &config.orbitals.model(&geom)?)?;
    let e = coulomb_tensor(&orbitals, &config.quadrature)?.exchange();
    Ok(ExchangeSource { value_ghz: e.value, error_ghz: e.error, source: "gaussian_orbitals" })
}

fn levels(config: &RunConfig, dir: &Path, prov: &Provenance) -> Result<PathBuf> {
    let ex = exchange(config)?;
    let table: Vec<LevelEntry> = level_table(&config.fine_structure, &config.optical, ex.value_ghz)?;
    let states = table_states();
    let levels = table
        .iter()
        .map(|l| {
            let s = states.iter().find(|s| s.name == l.state).expect("level names are table states");
            LevelRecord {
                name: l.state,
                irrep: l.irrep,
                config: l.configuration,
                multiplicity: l.multiplicity,
                energy_ghz: l.energy_ghz,
                configuration_energy_ghz: l.configuration_energy_ghz,
                coulomb_ghz: l.coulomb_ghz,
                fine_structure_ghz: l.fine_structure_ghz,
                amplitudes: s.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
            }
        })
        .collect();
    let sp = single_particle_levels(&config.single_particle);
    let data = LevelsData {
        exchange: ex,
        single_particle: SingleParticleRecord {
            a1_lower: sp.a1_lower,
            a1_upper: sp.a1_upper,
            ex: sp.ex,
            ey: sp.ey,
            alpha: sp.alpha,
            beta: sp.beta,
        },
        determinants: build_two_hole_basis().iter().map(|d| d.to_string()).collect(),
        levels,
    };
    write_json(dir, "levels.json", prov, &data)
}

#[derive(Serialize)]
struct SelectionData {
    tables: Vec<SelectionRuleTable>,
    /// Every nonzero emission amplitude ⟨to|d|from⟩ in units of ⟨a|x|ex⟩.
    amplitudes: Vec<TransitionDipole>,
    singlet_transitions: SingletTransitionReport,
}

fn selection(dir: &Path, prov: &Provenance) -> Result<PathBuf> {
    let data = SelectionData {
        tables: selection_rules().to_vec(),
        amplitudes: crate::spectra::dipole_matrix().into_iter().filter(|t| !t.is_zero()).collect(),
        singlet_transitions: singlet_transition_ratio(),
    };
    write_json(dir, "selection_rules.json", prov, &data)
}

fn strain(config: &RunConfig, dir: &Path, prov: &Provenance) -> Result<Vec<PathBuf>> {
    let sc = &config.strain_scan;
    let grid = sc.strain_ghz.values();
    let ground = TableState::GROUND_TRIPLET.iter().position(|s| s.name() == sc.ground).expect("validated");
    let basis = TableState::EXCITED_TRIPLET.map(|s| s.name());
    let idx = |n: &str| basis.iter().position(|b| *b == n).expect("excited basis");
    let (a1, a2) = (idx("A1"), idx("A2"));
    let mut files = Vec::new();
    for &axis in &sc.axes {
        let scan = strain_scan(&config.fine_structure, axis, &grid)?;
        let pol = polarization_vs_strain(&config.fine_structure, axis, &grid, &sc.branch)?;
        let mut header = vec![scan.parameter.clone()];
        header.extend(scan.branch_labels.iter().map(|l| format!("energy_{l}_ghz")));
        for l in &scan.branch_labels {
            header.extend(["a2", "a1", "e"].map(|k| format!("{l}_{k}_overlap")));
        }
        header.extend(["circular_degree", "linear_axis_rad", "intensity"].map(String::from));
        let rows: Vec<Vec<f64>> = (0..grid.len())
            .map(|k| {
                let mut row = vec![grid[k]];
                row.extend(&scan.energies[k]);
                for w in &scan.weights[k] {
                    let e: f64 = (0..w.len()).filter(|&i| i != a1 && i != a2).map(|i| w[i]).sum();
                    row.extend([w[a2], w[a1], e]);
                }
                let p = &pol[k];
                let rep = [p.to_minus, p.to_zero, p.to_plus][ground];
                row.extend([rep.circular_degree, rep.linear_axis.unwrap_or(f64::NAN), rep.intensity]);
                row
            })
            .collect();
        let name = match axis {
            StrainAxis::E1 => "strain_scan_e1.csv",
            StrainAxis::E2 => "strain_scan_e2.csv",
        };
        files.push(write_csv(dir, name, prov, &header, &rows)?);
    }
    Ok(files)
}

/// Least-squares line y = slope·x + intercept and the largest residual.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let residual = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).abs()).fold(0.0, f64::max);
    (slope, intercept, residual)
}

/// Mean excited-triplet level minus mean ground level at each field point.
pub fn relative_shift(scan: &StarkScan) -> Vec<f64> {
    let mean = |v: &Vec<f64>| v.iter().sum::<f64>() / v.len() as f64;
    scan.excited.energies.iter().zip(&scan.ground.energies).map(|(e, g)| mean(e) - mean(g)).collect()
}

/// Largest minus smallest excited-triplet level at each field point.
pub fn excited_spread(scan: &StarkScan) -> Vec<f64> {
    scan.excited
        .energies
        .iter()
        .map(|e| e.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - e.iter().cloned().fold(f64::INFINITY, f64::min))
        .collect()
}

#[derive(Serialize)]
struct StarkFit {
    direction: [f64; 3],
    fitted_relative_slope_ghz_per_mv_m: f64,
    relative_shift_max_residual_ghz: f64,
    /// g(d − b) times the axial component of the unit direction.
    predicted_relative_slope_ghz_per_mv_m: f64,
    /// 2ga times the transverse component of the unit direction.
    predicted_transverse_splitting_slope_ghz_per_mv_m: f64,
}

fn stark(config: &RunConfig, dir: &Path, prov: &Provenance) -> Result<Vec<PathBuf>> {
    let sc = &config.stark_scan;
    let grid = sc.field_mv_per_m.values();
    let d = nalgebra::Vector3::from(sc.direction);
    let scan = stark_scan(
        &config.fine_structure,
        &config.piezo,
        &config.optical,
        d,
        &grid,
        (sc.pre_strain_ghz[0], sc.pre_strain_ghz[1]),
    )?;
    let shift = relative_shift(&scan);
    let spread = excited_spread(&scan);
    let mut header = vec!["field_mv_per_m".to_string()];
    header.extend(scan.excited.branch_labels.iter().map(|l| format!("energy_{l}_ghz")));
    header.extend(scan.ground.branch_labels.iter().map(|l| format!("energy_{l}_ghz")));
    header.extend(["relative_shift_ghz", "excited_spread_ghz"].map(String::from));
    let rows: Vec<Vec<f64>> = (0..grid.len())
        .map(|k| {
            let mut row = vec![grid[k]];
            row.extend(&scan.excited.energies[k]);
            row.extend(&scan.ground.energies[k]);
            row.extend([shift[k], spread[k]]);
            row
        })
        .collect();
    let csv = write_csv(dir, "stark_scan.csv", prov, &header, &rows)?;
    let (slope, _, residual) = linear_fit(&grid, &shift);
    let u = scan.direction;
    let fit = StarkFit {
        direction: u,
        fitted_relative_slope_ghz_per_mv_m: slope,
        relative_shift_max_residual_ghz: residual,
        predicted_relative_slope_ghz_per_mv_m: config.piezo.axial_relative_slope() * u[2],
        predicted_transverse_splitting_slope_ghz_per_mv_m: config.piezo.transverse_splitting_slope() * u[0].hypot(u[1]),
    };
    let json = write_json(dir, "stark_fit.json", prov, &fit)?;
    Ok(vec![csv, json])
}

#[derive(Serialize)]
struct SweepData {
    points: Vec<SpinSpinSweepPoint>,
    trends: Vec<Trend>,
}

fn spin_spin(config: &RunConfig, dir: &Path, prov: &Provenance) -> Result<Vec<PathBuf>> {
    let geom = config.orbitals.geometry()?;
    let width = config.orbitals.model(&geom)?.width;
    let pops = config.spin_spin.nitrogen_population.values();
    let points = spin_spin_sweep(&geom, width, &pops, &config.quadrature)?;
    let header: Vec<String> = [
        "nitrogen_population",
        "delta_ghz",
        "delta_error_ghz",
        "delta_prime_ghz",
        "delta_prime_error_ghz",
        "delta_double_prime_ghz",
        "delta_double_prime_error_ghz",
        "trace_ghz",
        "trace_error_ghz",
    ]
    .map(String::from)
    .to_vec();
    let pair = |e: &Estimate| [e.value, e.error];
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            let e = &p.estimate;
            let mut row = vec![p.nitrogen_population];
            for v in [&e.delta, &e.delta_prime, &e.delta_double_prime, &e.trace] {
                row.extend(pair(v));
            }
            row
        })
        .collect();
    let csv = write_csv(dir, "spin_spin_sweep.csv", prov, &header, &rows)?;
    let trends = sweep_trends(&points);
    let json = write_json(dir, "spin_spin_sweep.json", prov, &SweepData { points, trends })?;
    Ok(vec![csv, json])
}

impl std::str::FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown subcommand {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcommand_names_round_trip() {
        for c in Subcommand::ALL {
            assert_eq!(c.name().parse::<Subcommand>().unwrap(), c);
        }
        assert!("plot".parse::<Subcommand>().is_err());
    }

    #[test]
    fn linear_fit_exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.5 * v - 1.0).collect();
        let (s, i, r) = linear_fit(&x, &y);
        assert!((s - 2.5).abs() < 1e-14 && (i + 1.0).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn zero_couplings_give_manifold_degenerate_levels() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig { exchange_ghz: Some(0.0), ..Default::default() };
        cfg.fine_structure = crate::nvmodel::FineStructureParams::zero();
        cfg.optical.ground_zfs_ghz = 0.0;
        let out = run_config(Subcommand::Levels, &cfg, dir.path()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out.files[0]).unwrap()).unwrap();
        let levels = v["data"]["levels"].as_array().unwrap();
        assert_eq!(levels.len(), 15);
        let zpl = cfg.optical.zero_phonon_line_ghz;
        for l in levels {
            let a = match l["config"].as_str().unwrap() {
                "e2" => 0.0,
                "ae" => 1.0,
                _ => 2.0,
            };
            assert_eq!(l["energy_ghz"].as_f64().unwrap(), a * zpl);
        }
    }
}
