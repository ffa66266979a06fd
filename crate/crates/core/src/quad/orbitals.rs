use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};

use super::geometry::{DefectGeometry, DEFAULT_BOND_LENGTH};
use super::grid::ProductGrid;
use crate::{Error, Result};

/// Nearest-neighbour site overlap used to pick the default Gaussian width.
pub const DEFAULT_SITE_OVERLAP: f64 = 0.1;

/// ⟨σi|σj⟩ for normalised s-Gaussians of width `width` a distance `distance` apart.
pub fn site_overlap(distance: f64, width: f64) -> f64 {
    (-distance * distance / (4.0 * width * width)).exp()
}

/// Inverse of [`site_overlap`].
pub fn width_for_overlap(distance: f64, overlap: f64) -> f64 {
    distance / (2.0 * (1.0 / overlap).ln().sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianOrbitalModel {
    /// Site Gaussian width w in exp(−r²/2w²), Å.
    #[serde(rename = "width_angstrom")]
    pub width: f64,
    /// |β|², the nitrogen weight of a1(2).
    pub nitrogen_population: f64,
}

impl GaussianOrbitalModel {
    pub fn new(width: f64, nitrogen_population: f64) -> Result<Self> {
        let m = GaussianOrbitalModel { width, nitrogen_population };
        m.validate()?;
        Ok(m)
    }

    /// Width chosen so that nearest carbon sites overlap by [`DEFAULT_SITE_OVERLAP`].
    pub fn for_geometry(geom: &DefectGeometry, nitrogen_population: f64) -> Result<Self> {
        Self::new(width_for_overlap(geom.carbon_carbon_distance(), DEFAULT_SITE_OVERLAP), nitrogen_population)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::Config(format!("Gaussian width must be positive, got {}", self.width)));
        }
        if !(0.0..=1.0).contains(&self.nitrogen_population) {
            return Err(Error::Config(format!(
                "nitrogen population must lie in [0, 1], got {}",
                self.nitrogen_population
            )));
        }
        Ok(())
    }
}

impl Default for GaussianOrbitalModel {
    fn default() -> Self {
        let cc = DEFAULT_BOND_LENGTH * (8.0f64 / 3.0).sqrt();
        GaussianOrbitalModel { width: width_for_overlap(cc, DEFAULT_SITE_OVERLAP), nitrogen_population: 0.3 }
    }
}

/// Real linear combination Σ c_i g(r − R_i) of normalised s-Gaussians
/// g(r) = (πw²)^(−3/4) exp(−r²/2w²) sharing one width.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianOrbital {
    pub width: f64,
    pub terms: Vec<(f64, Vector3<f64>)>,
}

impl GaussianOrbital {
    pub fn site(center: Vector3<f64>, width: f64) -> Self {
        GaussianOrbital { width, terms: vec![(1.0, center)] }
    }

    pub fn combination(sites: &[Vector3<f64>], coefficients: &[f64], width: f64) -> Self {
        let terms = sites.iter().zip(coefficients).filter(|(_, c)| **c != 0.0).map(|(s, c)| (*c, *s)).collect();
        GaussianOrbital { width, terms }
    }

    pub fn eval(&self, r: &Vector3<f64>) -> f64 {
        let w2 = self.width * self.width;
        let norm = (PI * w2).powf(-0.75);
        self.terms.iter().map(|(c, s)| c * (-(r - s).norm_squared() / (2.0 * w2)).exp()).sum::<f64>() * norm
    }

    /// Analytic overlap with another orbital of the same width.
    pub fn overlap(&self, other: &GaussianOrbital) -> f64 {
        assert_eq!(self.width, other.width, "overlap needs a common width");
        let mut s = 0.0;
        for (ci, ri) in &self.terms {
            for (cj, rj) in &other.terms {
                s += ci * cj * site_overlap((ri - rj).norm(), self.width);
            }
        }
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.overlap(self)
    }

    pub fn scaled(&self, f: f64) -> Self {
        GaussianOrbital { width: self.width, terms: self.terms.iter().map(|(c, s)| (c * f, *s)).collect() }
    }

    /// α·self + β·other, merging coincident centres.
    pub fn combine(&self, alpha: f64, other: &GaussianOrbital, beta: f64) -> Self {
        let mut terms: Vec<(f64, Vector3<f64>)> = Vec::new();
        for (c, s) in self.scaled(alpha).terms.into_iter().chain(other.scaled(beta).terms) {
            match terms.iter_mut().find(|(_, t)| (t - s).norm() < 1e-12) {
                Some(t) => t.0 += c,
                None => terms.push((c, s)),
            }
        }
        terms.retain(|(c, _)| *c != 0.0);
        GaussianOrbital { width: self.width, terms }
    }

    pub fn normalized(&self, label: &'static str) -> Result<Self> {
        let n = self.norm_sq();
        if !(n.is_finite() && n > 1e-10) {
            return Err(Error::Normalization { orbital: label, norm_sq: n });
        }
        Ok(self.scaled(1.0 / n.sqrt()))
    }
}

/// Symmetric (Löwdin) orthogonalisation S^(−1/2) of a set of orbitals.
pub fn lowdin(orbitals: &[GaussianOrbital], label: &'static str) -> Result<Vec<GaussianOrbital>> {
    let n = orbitals.len();
    let s = DMatrix::from_fn(n, n, |i, j| orbitals[i].overlap(&orbitals[j]));
    let eig = s.clone().symmetric_eigen();
    let min = eig.eigenvalues.min();
    if !(min > 1e-10) {
        return Err(Error::Normalization { orbital: label, norm_sq: min });
    }
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
    let t = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    Ok((0..n)
        .map(|j| {
            (0..n).fold(GaussianOrbital { width: orbitals[0].width, terms: vec![] }, |acc, i| {
                acc.combine(1.0, &orbitals[i], t[(i, j)])
            })
        })
        .collect())
}

/// a1(2), ex and ey of the Gaussian dangling-bond model.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectOrbitals {
    pub ex: GaussianOrbital,
    pub ey: GaussianOrbital,
    pub a: GaussianOrbital,
}

/// Overlaps of [`DefectOrbitals`] evaluated on a product grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OverlapCheck {
    pub ex_ex: f64,
    pub ey_ey: f64,
    pub a_a: f64,
    pub ex_ey: f64,
    pub a_ex: f64,
    pub a_ey: f64,
}

impl OverlapCheck {
    pub fn max_defect(&self) -> f64 {
        [
            (self.ex_ex - 1.0).abs(),
            (self.ey_ey - 1.0).abs(),
            (self.a_a - 1.0).abs(),
            self.ex_ey.abs(),
            self.a_ex.abs(),
            self.a_ey.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl DefectOrbitals {
    pub fn width(&self) -> f64 {
        self.ex.width
    }

    pub fn as_array(&self) -> [&GaussianOrbital; 3] {
        [&self.ex, &self.ey, &self.a]
    }

    /// (ex, ey, a) at a point.
    pub fn eval(&self, r: &Vector3<f64>) -> [f64; 3] {
        [self.ex.eval(r), self.ey.eval(r), self.a.eval(r)]
    }

    /// Overlap matrix checked by Gauss–Legendre product quadrature on a box
    /// covering every centre by 6.5 widths.
    pub fn quadrature_overlaps(&self, points_per_axis: usize) -> OverlapCheck {
        let centers: Vec<Vector3<f64>> = self.as_array().iter().flat_map(|o| o.terms.iter().map(|t| t.1)).collect();
        let grid = ProductGrid::covering(&centers, 6.5 * self.width(), points_per_axis);
        let mut acc = [0.0; 6];
        for (p, w) in grid.iter() {
            let [x, y, a] = self.eval(&p);
            for (slot, v) in acc.iter_mut().zip([x * x, y * y, a * a, x * y, a * x, a * y]) {
                *slot += w * v;
            }
        }
        OverlapCheck { ex_ex: acc[0], ey_ey: acc[1], a_a: acc[2], ex_ey: acc[3], a_ex: acc[4], a_ey: acc[5] }
    }
}

/// Builds a1(2), ex, ey from the site Gaussians of `geom`.
///
/// ex ∝ 2σ1 − σ2 − σ3 and ey ∝ σ2 − σ3 are orthonormalised symmetrically;
/// a_C ∝ σ1 + σ2 + σ3 and a_N = σN likewise, and
/// a1(2) = √p_N a_N − √(1 − p_N) a_C is the antibonding partner.
pub fn build_orbitals(geom: &DefectGeometry, model: &GaussianOrbitalModel) -> Result<DefectOrbitals> {
    geom.validate()?;
    build_from_sites(&geom.carbons, &[geom.nitrogen], model)
}

/// As [`build_orbitals`], but a_N is the symmetric combination of the
/// nitrogen site and its mirror image through the carbon plane, so the whole
/// model is invariant under that reflection.
pub fn build_orbitals_mirror_symmetric(geom: &DefectGeometry, model: &GaussianOrbitalModel) -> Result<DefectOrbitals> {
    geom.validate()?;
    let plane_z = geom.carbons[0].z;
    let mut image = geom.nitrogen;
    image.z = 2.0 * plane_z - image.z;
    build_from_sites(&geom.carbons, &[geom.nitrogen, image], model)
}

fn build_from_sites(
    carbons: &[Vector3<f64>; 3],
    nitrogen: &[Vector3<f64>],
    model: &GaussianOrbitalModel,
) -> Result<DefectOrbitals> {
    model.validate()?;
    let w = model.width;
    let ex = GaussianOrbital::combination(carbons, &[2.0, -1.0, -1.0], w).normalized("ex")?;
    let ey = GaussianOrbital::combination(carbons, &[0.0, 1.0, -1.0], w).normalized("ey")?;
    let e = lowdin(&[ex, ey], "e")?;

    let a_c = GaussianOrbital::combination(carbons, &[1.0; 3], w).normalized("a_C")?;
    let a_n = GaussianOrbital::combination(nitrogen, &vec![1.0; nitrogen.len()], w).normalized("a_N")?;
    let a = lowdin(&[a_c, a_n], "a1")?;
    let p = model.nitrogen_population;
    let a1 = a[1].combine(p.sqrt(), &a[0], -(1.0 - p).sqrt()).normalized("a1(2)")?;

    let orbitals = DefectOrbitals { ex: e[0].clone(), ey: e[1].clone(), a: a1 };
    let defect = orbitals.ex.overlap(&orbitals.ey).abs();
    if defect > 1e-8 {
        return Err(Error::NotOrthonormal { defect });
    }
    Ok(orbitals)
}
