use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::TableState;
use crate::linalg::{r, CMatrix, CVector, HamiltonianBlock};
use crate::nvmodel::{
    efield_hamiltonian, excited_triplet_spin_orbit, names, spin_spin_hamiltonian, strain_structure,
    FineStructureParams, PiezoParams,
};
use crate::Result;

use super::dipole::dipole_blocks;
use super::polarization::PolarizationReport;
use super::tracking::{diagonalize_tracked, ScanResult};

/// Optical constants outside the group-theory model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OpticalParams {
    /// ³E − ³A2 zero-phonon line (637 nm).
    pub zero_phonon_line_ghz: f64,
    /// Ground-triplet zero-field splitting, m_s = ±1 above m_s = 0.
    pub ground_zfs_ghz: f64,
}

impl Default for OpticalParams {
    fn default() -> Self {
        OpticalParams { zero_phonon_line_ghz: 470_400.0, ground_zfs_ghz: 2.87 }
    }
}

/// Axial spin-orbit plus spin-spin on {A1, A2, Ex, Ey, E1, E2}.
pub fn excited_triplet_hamiltonian(fs: &FineStructureParams) -> HamiltonianBlock {
    excited_triplet_spin_orbit(fs.lambda_z) + spin_spin_hamiltonian(fs.delta, fs.delta_prime, fs.delta_double_prime)
}

/// Zero-field splitting on {³A2−, ³A20, ³A2+}.
pub fn ground_triplet_hamiltonian(zfs: f64) -> HamiltonianBlock {
    let m = CMatrix::from_diagonal(&CVector::from_vec(vec![r(zfs), r(0.0), r(zfs)]));
    HamiltonianBlock::new(names(&TableState::GROUND_TRIPLET), m)
}

/// E-symmetric strain component driven in a scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrainAxis {
    E1,
    E2,
}

impl StrainAxis {
    fn components(self, delta: f64) -> (f64, f64) {
        match self {
            StrainAxis::E1 => (delta, 0.0),
            StrainAxis::E2 => (0.0, delta),
        }
    }
}

fn with_matrix(base: &HamiltonianBlock, extra: CMatrix) -> HamiltonianBlock {
    HamiltonianBlock::new(base.basis.clone(), &base.matrix + extra)
}

/// Excited-triplet levels against δE1 or δE2 (GHz).
pub fn strain_scan(fs: &FineStructureParams, axis: StrainAxis, grid: &[f64]) -> Result<ScanResult> {
    let h0 = excited_triplet_hamiltonian(fs);
    let blocks: Vec<HamiltonianBlock> = grid
        .iter()
        .map(|&d| {
            let (d1, d2) = axis.components(d);
            with_matrix(&h0, strain_structure(d1, d2))
        })
        .collect();
    let name = match axis {
        StrainAxis::E1 => "delta_e1_ghz",
        StrainAxis::E2 => "delta_e2_ghz",
    };
    diagonalize_tracked(name, grid, &blocks)
}

/// (d_x, d_y) restricted to ground rows and excited-triplet columns.
fn triplet_dipoles() -> [CMatrix; 2] {
    dipole_blocks().map(|b| {
        CMatrix::from_fn(3, 6, |i, j| {
            b.matrix[(TableState::GROUND_TRIPLET[i].index(), TableState::EXCITED_TRIPLET[j].index())]
        })
    })
}

/// ⟨ground|d|excited⟩ for states given in the ground and excited-triplet bases.
pub fn emission_amplitudes(excited: &CVector, ground: &CVector) -> (Complex64, Complex64) {
    let [dx, dy] = triplet_dipoles();
    (ground.dotc(&(&dx * excited)), ground.dotc(&(&dy * excited)))
}

fn ground_unit(k: usize) -> CVector {
    let mut v = CVector::zeros(3);
    v[k] = r(1.0);
    v
}

/// Polarisation of one tracked excited branch decaying into the ground sublevels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrainPolarizationPoint {
    pub strain_ghz: f64,
    pub energy_ghz: f64,
    /// Decay into ³A2−, ³A20, ³A2+.
    pub to_minus: PolarizationReport,
    pub to_zero: PolarizationReport,
    pub to_plus: PolarizationReport,
}

impl StrainPolarizationPoint {
    pub fn total_intensity(&self) -> f64 {
        self.to_minus.intensity + self.to_zero.intensity + self.to_plus.intensity
    }
}

/// Emission polarisation of the branch that starts as `label` at the first
/// grid point.
pub fn polarization_vs_strain(
    fs: &FineStructureParams,
    axis: StrainAxis,
    grid: &[f64],
    label: &str,
) -> Result<Vec<StrainPolarizationPoint>> {
    let scan = strain_scan(fs, axis, grid)?;
    let b = scan
        .branch(label)
        .ok_or_else(|| crate::Error::Config(format!("no branch labelled {label} at the first grid point")))?;
    Ok((0..grid.len())
        .map(|k| {
            let v = scan.vector(k, b);
            let rep = |g: usize| {
                let (ax, ay) = emission_amplitudes(&v, &ground_unit(g));
                PolarizationReport::from_amplitudes(ax, ay)
            };
            StrainPolarizationPoint {
                strain_ghz: grid[k],
                energy_ghz: scan.energies[k][b],
                to_minus: rep(0),
                to_zero: rep(1),
                to_plus: rep(2),
            }
        })
        .collect())
}

/// One optical line between tracked excited and ground branches.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpticalLine {
    pub excited: String,
    pub ground: String,
    pub frequency_ghz: f64,
    /// Frequency minus the zero-phonon line.
    pub detuning_ghz: f64,
    pub intensity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarkScan {
    /// Field along `direction`, MV/m.
    pub field_mv_per_m: Vec<f64>,
    pub direction: [f64; 3],
    pub pre_strain_ghz: (f64, f64),
    pub excited: ScanResult,
    pub ground: ScanResult,
    /// `lines[point]`, excited branches × ground branches.
    pub lines: Vec<Vec<OpticalLine>>,
}

impl StarkScan {
    pub fn line(&self, point: usize, excited: &str, ground: &str) -> Option<&OpticalLine> {
        self.lines[point].iter().find(|l| l.excited == excited && l.ground == ground)
    }
}

/// Optical transitions against a field of magnitude `grid` along `direction`,
/// on top of a fixed E-type pre-strain (δE1, δE2).
pub fn stark_scan(
    fs: &FineStructureParams,
    piezo: &PiezoParams,
    optical: &OpticalParams,
    direction: Vector3<f64>,
    grid: &[f64],
    pre_strain: (f64, f64),
) -> Result<StarkScan> {
    let norm = direction.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(crate::Error::Config("field direction must be a non-zero vector".into()));
    }
    let u = direction / norm;
    let h0 = with_matrix(&excited_triplet_hamiltonian(fs), strain_structure(pre_strain.0, pre_strain.1));
    let g0 = ground_triplet_hamiltonian(optical.ground_zfs_ghz);
    let (mut exc, mut gnd) = (Vec::new(), Vec::new());
    for &e in grid {
        let h = efield_hamiltonian(&(u * e), piezo);
        exc.push(with_matrix(&h0, h.excited_triplet.matrix));
        gnd.push(with_matrix(&g0, h.ground_triplet.matrix));
    }
    let excited = diagonalize_tracked("field_mv_per_m", grid, &exc)?;
    let ground = diagonalize_tracked("field_mv_per_m", grid, &gnd)?;
    let lines = (0..grid.len())
        .map(|k| {
            let mut out = Vec::new();
            for (b, bl) in excited.branch_labels.iter().enumerate() {
                for (g, gl) in ground.branch_labels.iter().enumerate() {
                    let (ax, ay) = emission_amplitudes(&excited.vector(k, b), &ground.vector(k, g));
                    let detuning = excited.energies[k][b] - ground.energies[k][g];
                    out.push(OpticalLine {
                        excited: bl.clone(),
                        ground: gl.clone(),
                        frequency_ghz: optical.zero_phonon_line_ghz + detuning,
                        detuning_ghz: detuning,
                        intensity: ax.norm_sqr() + ay.norm_sqr(),
                    });
                }
            }
            out
        })
        .collect();
    Ok(StarkScan {
        field_mv_per_m: grid.to_vec(),
        direction: [u.x, u.y, u.z],
        pre_strain_ghz: pre_strain,
        excited,
        ground,
        lines,
    })
}

/// One row of the fifteen-level table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelEntry {
    pub state: &'static str,
    pub irrep: &'static str,
    pub configuration: &'static str,
    pub multiplicity: u8,
    /// 0 for e², the zero-phonon line for ae, twice that for a².
    pub configuration_energy_ghz: f64,
    /// Coulomb ordering inside e²: 0, 2e, 4e for ³A2, ¹E, ¹A1.
    pub coulomb_ghz: f64,
    /// Spin-orbit and spin-spin level inside the triplets.
    pub fine_structure_ghz: f64,
    pub energy_ghz: f64,
}

/// Levels of all fifteen states. Coulomb splittings are only modelled
/// inside e², fine structure only inside the two triplets.
pub fn level_table(fs: &FineStructureParams, optical: &OpticalParams, exchange_ghz: f64) -> Result<Vec<LevelEntry>> {
    let exc = diagonalize_tracked("zero", &[0.0], &[excited_triplet_hamiltonian(fs)])?;
    let fine = |s: TableState| -> f64 {
        if let Some(b) = exc.branch(s.name()) {
            exc.energies[0][b]
        } else if TableState::GROUND_TRIPLET.contains(&s) {
            ground_triplet_hamiltonian(optical.ground_zfs_ghz).get(s.name(), s.name()).re
        } else {
            0.0
        }
    };
    Ok(TableState::ALL
        .iter()
        .map(|&s| {
            let config = s.config();
            let configuration_energy_ghz = config.a_count() as f64 * optical.zero_phonon_line_ghz;
            let coulomb_ghz = match s {
                TableState::SingletE1 | TableState::SingletE2 => 2.0 * exchange_ghz,
                TableState::SingletA1Ee => 4.0 * exchange_ghz,
                _ => 0.0,
            };
            let fine_structure_ghz = fine(s);
            LevelEntry {
                state: s.name(),
                irrep: s.irrep().label(),
                configuration: config.label(),
                multiplicity: if s.is_triplet() { 3 } else { 1 },
                configuration_energy_ghz,
                coulomb_ghz,
                fine_structure_ghz,
                energy_ghz: configuration_energy_ghz + coulomb_ghz + fine_structure_ghz,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_strain_branches_are_linear() {
        let grid: Vec<f64> = (0..11).map(|k| k as f64).collect();
        let s = strain_scan(&FineStructureParams::zero(), StrainAxis::E1, &grid).unwrap();
        for (k, d) in grid.iter().enumerate() {
            let mut e = s.energies[k].clone();
            e.sort_by(f64::total_cmp);
            for (v, want) in e.iter().zip([-d, -d, -d, *d, *d, *d]) {
                assert!((v - want).abs() < 1e-12);
            }
        }
        assert!(s.weyl_ok());
    }

    #[test]
    fn zero_field_gaps() {
        let fs = FineStructureParams { delta_double_prime: 0.0, ..Default::default() };
        let s = diagonalize_tracked("p", &[0.0], &[excited_triplet_hamiltonian(&fs)]).unwrap();
        let e = |l: &str| s.energies[0][s.branch(l).unwrap()];
        assert!((e("A2") - e("A1") - 4.0 * fs.delta_prime).abs() < 1e-12);
        assert!((e("E1") - e("Ex") + fs.lambda_z - 3.0 * fs.delta).abs() < 1e-12);
        assert!((e("A1") - e("Ex") - fs.lambda_z - 3.0 * fs.delta + 2.0 * fs.delta_prime).abs() < 1e-12);
    }

    #[test]
    fn a2_emits_sigma_plus_into_minus() {
        let p = polarization_vs_strain(&FineStructureParams::default(), StrainAxis::E1, &[0.0], "A2").unwrap();
        assert!((p[0].to_minus.circular_degree - 1.0).abs() < 1e-12);
        assert!((p[0].to_plus.circular_degree + 1.0).abs() < 1e-12);
        assert_eq!(p[0].to_zero.intensity, 0.0);
    }

    #[test]
    fn level_table_orders_e2_singlets() {
        let t = level_table(&FineStructureParams::default(), &OpticalParams::default(), 1000.0).unwrap();
        let e = |n: &str| t.iter().find(|l| l.state == n).unwrap().energy_ghz;
        assert!(e("3A20") < e("1E1") && e("1E1") < e("1A1(e2)"));
        assert_eq!(t.len(), 15);
    }
}
