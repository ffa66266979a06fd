use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::nvmodel::{FineStructureParams, PiezoParams, SingleParticleParams};
use crate::quad::{DefectGeometry, GaussianOrbitalModel, QuadratureSpec, DEFAULT_BOND_LENGTH};
use crate::spectra::{OpticalParams, StrainAxis};
use crate::{Error, Result};

/// Inclusive, evenly spaced grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Range {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Range { start, stop, points }
    }

    pub fn validate(&self, what: &str) -> Result<()> {
        if self.points == 0 || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::Config(format!("{what}: grid needs finite bounds and at least one point")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        let n = (self.points - 1) as f64;
        (0..self.points).map(|k| self.start + span * k as f64 / n).collect()
    }
}

/// Sites of the defect and the Gaussian orbital model used by the integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrbitalConfig {
    pub bond_length_angstrom: f64,
    /// Radial scale of the carbon and nitrogen sites relative to the ideal lattice.
    pub carbon_scale: f64,
    pub nitrogen_scale: f64,
    /// Gaussian width; absent means the width that gives the default
    /// nearest-neighbour carbon overlap.
    pub width_angstrom: Option<f64>,
    pub nitrogen_population: f64,
}

impl Default for OrbitalConfig {
    fn default() -> Self {
        OrbitalConfig {
            bond_length_angstrom: DEFAULT_BOND_LENGTH,
            carbon_scale: 1.0,
            nitrogen_scale: 1.0,
            width_angstrom: None,
            nitrogen_population: GaussianOrbitalModel::default().nitrogen_population,
        }
    }
}

impl OrbitalConfig {
    pub fn geometry(&self) -> Result<DefectGeometry> {
        DefectGeometry::scaled(self.bond_length_angstrom, self.carbon_scale, self.nitrogen_scale)
    }

    pub fn model(&self, geom: &DefectGeometry) -> Result<GaussianOrbitalModel> {
        match self.width_angstrom {
            Some(w) => GaussianOrbitalModel::new(w, self.nitrogen_population),
            None => GaussianOrbitalModel::for_geometry(geom, self.nitrogen_population),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StrainScanConfig {
    /// One output file per axis.
    pub axes: Vec<StrainAxis>,
    pub strain_ghz: Range,
    /// Excited branch (label at the first grid point) whose emission is analysed.
    pub branch: String,
    /// Ground sublevel receiving the analysed photon.
    pub ground: String,
}

impl Default for StrainScanConfig {
    fn default() -> Self {
        StrainScanConfig {
            axes: vec![StrainAxis::E1, StrainAxis::E2],
            strain_ghz: Range::new(0.0, 40.0, 81),
            branch: "A2".into(),
            ground: "3A2-".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StarkScanConfig {
    /// Field direction in the defect frame (z along the NV axis); normalised on use.
    pub direction: [f64; 3],
    pub field_mv_per_m: Range,
    /// Fixed (δE1, δE2) added at every point.
    pub pre_strain_ghz: [f64; 2],
}

impl Default for StarkScanConfig {
    fn default() -> Self {
        StarkScanConfig {
            direction: [0.0, 0.0, 1.0],
            field_mv_per_m: Range::new(0.0, 1.0, 21),
            pre_strain_ghz: [0.0, 0.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpinSpinConfig {
    pub nitrogen_population: Range,
}

impl Default for SpinSpinConfig {
    fn default() -> Self {
        SpinSpinConfig { nitrogen_population: Range::new(0.0, 1.0, 11) }
    }
}

/// Everything a run reads. Every section is optional and falls back to its defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub fine_structure: FineStructureParams,
    pub piezo: PiezoParams,
    pub optical: OpticalParams,
    pub single_particle: SingleParticleParams,
    /// e² exchange splitting; computed from the Gaussian orbitals when absent.
    pub exchange_ghz: Option<f64>,
    pub orbitals: OrbitalConfig,
    pub quadrature: QuadratureSpec,
    pub strain_scan: StrainScanConfig,
    pub stark_scan: StarkScanConfig,
    pub spin_spin: SpinSpinConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.fine_structure.is_finite() {
            return Err(Error::Config("fine_structure values must be finite".into()));
        }
        let p = &self.piezo;
        let o = &self.optical;
        let s = &self.single_particle;
        if ![p.a, p.b, p.c, p.d, p.g, o.zero_phonon_line_ghz, o.ground_zfs_ghz, s.v_c, s.v_n, s.h_c, s.h_n]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::Config("piezo, optical and single_particle values must be finite".into()));
        }
        if let Some(e) = self.exchange_ghz {
            if !e.is_finite() {
                return Err(Error::Config("exchange_ghz must be finite".into()));
            }
        }
        let geom = self.orbitals.geometry()?;
        self.orbitals.model(&geom)?;
        self.quadrature.validate()?;
        self.strain_scan.strain_ghz.validate("strain_scan.strain_ghz")?;
        if self.strain_scan.axes.is_empty() {
            return Err(Error::Config("strain_scan.axes is empty".into()));
        }
        if !crate::fock::TableState::EXCITED_TRIPLET.iter().any(|s| s.name() == self.strain_scan.branch) {
            return Err(Error::Config(format!(
                "strain_scan.branch {:?} is not an excited-triplet state",
                self.strain_scan.branch
            )));
        }
        if !crate::fock::TableState::GROUND_TRIPLET.iter().any(|s| s.name() == self.strain_scan.ground) {
            return Err(Error::Config(format!(
                "strain_scan.ground {:?} is not a ground-triplet state",
                self.strain_scan.ground
            )));
        }
        self.stark_scan.field_mv_per_m.validate("stark_scan.field_mv_per_m")?;
        let d = self.stark_scan.direction;
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if !(n > 0.0 && n.is_finite()) || !self.stark_scan.pre_strain_ghz.iter().all(|v| v.is_finite()) {
            return Err(Error::Config("stark_scan.direction must be a finite non-zero vector".into()));
        }
        let pn = &self.spin_spin.nitrogen_population;
        pn.validate("spin_spin.nitrogen_population")?;
        if pn.values().iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config("spin_spin.nitrogen_population must stay inside [0, 1]".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_default() {
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(matches!(RunConfig::from_json(r#"{"lambda": 1}"#), Err(Error::Json(_))));
        assert!(RunConfig::from_json(r#"{"optical": {"zpl": 1}}"#).is_err());
    }

    #[test]
    fn bad_values_rejected() {
        let bad = r#"{"spin_spin": {"nitrogen_population": {"start": 0, "stop": 2, "points": 3}}}"#;
        assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))));
        let bad = r#"{"strain_scan": {"branch": "3A20"}}"#;
        assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))));
    }

    #[test]
    fn range_endpoints() {
        let v = Range::new(-1.0, 1.0, 5).values();
        assert_eq!(v, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(Range::new(3.0, 9.0, 1).values(), vec![3.0]);
    }
}
