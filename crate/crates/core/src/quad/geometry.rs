use nalgebra::{Rotation3, Vector3};

use crate::symm::site_directions;
use crate::{Error, Result};

/// Nearest-neighbour C–vacancy distance of the unrelaxed lattice, Å.
pub const DEFAULT_BOND_LENGTH: f64 = 1.54;

/// Positions (Å) of the three carbons, the nitrogen and the vacancy.
///
/// The NV axis is +z through the vacancy, with the nitrogen above it.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectGeometry {
    pub carbons: [Vector3<f64>; 3],
    pub nitrogen: Vector3<f64>,
    pub vacancy: Vector3<f64>,
    /// Carbon–vacancy distance relative to the bond length (1.03 = 3 % expansion).
    pub carbon_scale: f64,
    /// Nitrogen–vacancy distance relative to the bond length (0.96 = 4 % contraction).
    pub nitrogen_scale: f64,
}

impl DefectGeometry {
    pub fn tetrahedral(bond_length: f64) -> Result<Self> {
        Self::scaled(bond_length, 1.0, 1.0)
    }

    pub fn scaled(bond_length: f64, carbon_scale: f64, nitrogen_scale: f64) -> Result<Self> {
        for (name, v) in
            [("bond length", bond_length), ("carbon scale", carbon_scale), ("nitrogen scale", nitrogen_scale)]
        {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Geometry(format!("{name} must be positive, got {v}")));
            }
        }
        let d = site_directions();
        let geom = DefectGeometry {
            carbons: [0, 1, 2].map(|k| d[k] * (bond_length * carbon_scale)),
            nitrogen: d[3] * (bond_length * nitrogen_scale),
            vacancy: Vector3::zeros(),
            carbon_scale,
            nitrogen_scale,
        };
        geom.validate()?;
        Ok(geom)
    }

    /// Explicit positions; the scale factors are recorded as 1.
    pub fn from_positions(carbons: [Vector3<f64>; 3], nitrogen: Vector3<f64>, vacancy: Vector3<f64>) -> Result<Self> {
        let geom = DefectGeometry { carbons, nitrogen, vacancy, carbon_scale: 1.0, nitrogen_scale: 1.0 };
        geom.validate()?;
        Ok(geom)
    }

    /// Checks that N sits on the +z axis through the vacancy and that a 120°
    /// rotation about that axis takes C1 → C2 → C3 → C1.
    pub fn validate(&self) -> Result<()> {
        let all = self.sites();
        if all.iter().chain([&self.vacancy]).any(|p| !p.iter().all(|x| x.is_finite())) {
            return Err(Error::Geometry("non-finite coordinate".into()));
        }
        let scale = all.iter().map(|p| (p - self.vacancy).norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::Geometry("all sites coincide with the vacancy".into()));
        }
        let tol = 1e-6 * scale;
        let n = self.nitrogen - self.vacancy;
        if n.x.hypot(n.y) > tol || n.z <= tol {
            return Err(Error::Geometry("nitrogen is not on the +z axis through the vacancy".into()));
        }
        let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), 2.0 * std::f64::consts::PI / 3.0);
        for k in 0..3 {
            let image = rot * (self.carbons[k] - self.vacancy) + self.vacancy;
            let defect = (image - self.carbons[(k + 1) % 3]).norm();
            if defect > tol {
                return Err(Error::Geometry(format!(
                    "carbons are not related by a 120° rotation about the axis (defect {defect:e} Å)"
                )));
            }
        }
        Ok(())
    }

    /// The same geometry rotated about the NV axis, site labels kept.
    pub fn rotated(&self, angle: f64) -> Self {
        let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), angle);
        let map = |p: &Vector3<f64>| rot * (p - self.vacancy) + self.vacancy;
        DefectGeometry { carbons: self.carbons.each_ref().map(map), nitrogen: map(&self.nitrogen), ..self.clone() }
    }

    /// C1, C2, C3, N.
    pub fn sites(&self) -> [Vector3<f64>; 4] {
        [self.carbons[0], self.carbons[1], self.carbons[2], self.nitrogen]
    }

    pub fn carbon_carbon_distance(&self) -> f64 {
        (self.carbons[0] - self.carbons[1]).norm()
    }
}

impl Default for DefectGeometry {
    fn default() -> Self {
        Self::tetrahedral(DEFAULT_BOND_LENGTH).expect("default geometry is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedral_distances() {
        let g = DefectGeometry::default();
        for s in g.sites() {
            assert!((s.norm() - DEFAULT_BOND_LENGTH).abs() < 1e-12);
        }
        let cc = DEFAULT_BOND_LENGTH * (8.0f64 / 3.0).sqrt();
        assert!((g.carbon_carbon_distance() - cc).abs() < 1e-12);
    }

    #[test]
    fn scale_factors_move_sites() {
        let g = DefectGeometry::scaled(1.54, 1.03, 0.96).unwrap();
        assert!((g.carbons[1].norm() - 1.54 * 1.03).abs() < 1e-12);
        assert!((g.nitrogen.z - 1.54 * 0.96).abs() < 1e-12);
    }

    #[test]
    fn broken_symmetry_rejected() {
        let g = DefectGeometry::default();
        let mut c = g.carbons;
        c[2].x += 0.1;
        assert!(matches!(DefectGeometry::from_positions(c, g.nitrogen, g.vacancy), Err(Error::Geometry(_))));
        let off_axis = g.nitrogen + Vector3::new(0.2, 0.0, 0.0);
        assert!(DefectGeometry::from_positions(g.carbons, off_axis, g.vacancy).is_err());
        assert!(DefectGeometry::scaled(1.54, -1.0, 1.0).is_err());
    }

    #[test]
    fn rotation_keeps_validity() {
        let g = DefectGeometry::default().rotated(0.7);
        g.validate().unwrap();
    }
}
