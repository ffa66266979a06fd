use std::f64::consts::SQRT_2;

use serde::Serialize;

use super::geometry::DefectGeometry;
use super::mc::{
    extrapolate, integrate, integrate_separation, BatchMeans, CoulombKernel, DipolarKernel, Estimate, PairDensity,
    QuadratureSpec, DIPOLAR_COMPONENTS,
};
use super::orbitals::{build_orbitals, DefectOrbitals, GaussianOrbitalModel};
use crate::fock::TwoBodyTensor;
use crate::linalg::r;
use crate::nvmodel::{coulomb_expectations, CoulombExpectations, SPIN_SPIN_PREFACTOR_GHZ_A3};
use crate::{Error, Result};

/// e²/(4πε0) in GHz·Å (CODATA 2018).
pub const COULOMB_GHZ_ANGSTROM: f64 = 14.399_645_478_4 * 241_798.924_2;

/// The six distinct direct/exchange integrals over {ex, ey}, in GHz.
const COULOMB_LABELS: [&str; 6] = ["(xx|xx)", "(yy|yy)", "(xy|xy)", "(xx|yy)", "(xx|xy)", "(yy|xy)"];
const COULOMB_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

/// Coulomb tensor over {ex, ey} with per-batch samples kept for error propagation.
#[derive(Clone, Debug)]
pub struct CoulombTensorEstimate {
    /// Batch-mean tensor, GHz; entries touching a1 are zero.
    pub tensor: TwoBodyTensor,
    /// (label, estimate) of each distinct integral (ρ_ac|ρ_bd), GHz.
    pub integrals: Vec<(&'static str, Estimate)>,
    batches: Vec<[f64; 6]>,
}

fn density_index(a: usize, c: usize) -> usize {
    match (a, c) {
        (0, 0) => 0,
        (1, 1) => 1,
        _ => 2,
    }
}

fn tensor_from(values: &[f64; 6]) -> TwoBodyTensor {
    let lookup = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        values[COULOMB_PAIRS.iter().position(|p| *p == (i, j)).unwrap()]
    };
    TwoBodyTensor::symmetrized(|a, b, c, d| {
        if a > 1 || b > 1 || c > 1 || d > 1 {
            r(0.0)
        } else {
            r(lookup(density_index(a, c), density_index(b, d)))
        }
    })
}

impl CoulombTensorEstimate {
    pub fn expectations(&self) -> CoulombExpectations {
        coulomb_expectations(&self.tensor)
    }

    /// Mean and standard error of any scalar derived from the e² expectations.
    pub fn estimate_of(&self, f: impl Fn(&CoulombExpectations) -> f64) -> Estimate {
        Estimate::from_batches(self.batches.iter().map(|v| f(&coulomb_expectations(&tensor_from(v)))))
    }

    pub fn partner_splitting(&self) -> Estimate {
        self.estimate_of(|e| e.e_partner_splitting())
    }

    pub fn exchange(&self) -> Estimate {
        self.estimate_of(|e| e.exchange)
    }
}

fn check_set(what: &str, estimates: &[(&str, Estimate)], spec: &QuadratureSpec) -> Result<()> {
    let scale = estimates.iter().map(|(_, e)| e.value.abs()).fold(0.0, f64::max);
    for (label, e) in estimates {
        if !e.is_finite() || e.error > spec.target_relative_error * scale {
            return Err(Error::Integration { what: format!("{what} {label}"), value: e.value, error: e.error });
        }
    }
    Ok(())
}

/// Coulomb integrals C_abcd = ∫∫ a(1) b(2) c(1) d(2)/r12 over {ex, ey}.
pub fn coulomb_tensor(orbitals: &DefectOrbitals, spec: &QuadratureSpec) -> Result<CoulombTensorEstimate> {
    spec.validate()?;
    let (x, y) = (&orbitals.ex, &orbitals.ey);
    let densities = [PairDensity::product(x, x), PairDensity::product(y, y), PairDensity::product(x, y)];
    let runs: Vec<BatchMeans> = COULOMB_PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| integrate(&densities[i], &densities[j], &CoulombKernel, spec, 100 + k as u32))
        .collect();
    let batches: Vec<[f64; 6]> =
        (0..spec.batches).map(|b| std::array::from_fn(|k| runs[k].values[b][0] * COULOMB_GHZ_ANGSTROM)).collect();
    let integrals: Vec<(&'static str, Estimate)> =
        (0..6).map(|k| (COULOMB_LABELS[k], Estimate::from_batches(batches.iter().map(|v| v[k])))).collect();
    check_set("Coulomb integral", &integrals, spec)?;
    let means: [f64; 6] = std::array::from_fn(|k| integrals[k].1.value);
    Ok(CoulombTensorEstimate { tensor: tensor_from(&means), integrals, batches })
}

/// Δ, Δ′, Δ″ in GHz from the two-hole spatial state |X⟩ = |a ex − ex a⟩/√2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinSpinEstimate {
    pub delta: Estimate,
    pub delta_prime: Estimate,
    pub delta_double_prime: Estimate,
    /// Σ_k ⟨X|(1 − 3k̂²)/(4r³)|X⟩ in GHz over k = x, y, z; zero for a traceless tensor.
    pub trace: Estimate,
    /// ⟨X|(3d̂d̂ − I)/r³|X⟩ components (xx, yy, zz, xz) before extrapolation, per
    /// regularisation length, Å⁻³.
    pub regularized: [[f64; DIPOLAR_COMPONENTS]; 3],
    pub regularization_angstrom: [f64; 3],
}

impl SpinSpinEstimate {
    pub fn is_traceless(&self, nsigma: f64) -> bool {
        let scale = self.delta.value.abs().max(self.delta_prime.value.abs());
        self.trace.value.abs() <= nsigma * self.trace.error + 1e-9 * scale
    }

    /// Zero-field splitting 3Δ of the excited triplet.
    pub fn zero_field_splitting(&self) -> Estimate {
        Estimate { value: 3.0 * self.delta.value, error: 3.0 * self.delta.error }
    }
}

/// Evaluates the dipolar expectation values of |X⟩ with the erf-regularised
/// kernel at three lengths and extrapolates each batch to zero length.
pub fn spin_spin_parameters(orbitals: &DefectOrbitals, spec: &QuadratureSpec) -> Result<SpinSpinEstimate> {
    spec.validate()?;
    let (a, x) = (&orbitals.a, &orbitals.ex);
    let kernel = DipolarKernel { lengths: spec.regularization_angstrom };
    let ax = PairDensity::product(a, x);
    let direct = PairDensity::separation(&PairDensity::product(a, a), &PairDensity::product(x, x));
    // ⟨X|K|X⟩ = (aa|K|xx) − (ax|K|ax) for an even kernel.
    let f = direct.combine(1.0, &PairDensity::separation(&ax, &ax), -1.0);
    let values = integrate_separation(&f, &kernel, spec, 200);

    let s = spec.regularization_angstrom;
    let pref = SPIN_SPIN_PREFACTOR_GHZ_A3;
    let mut per_batch = Vec::with_capacity(spec.batches);
    let mut regularized = [[0.0; DIPOLAR_COMPONENTS]; 3];
    for v in &values.values {
        let xk = |li: usize, c: usize| v[li * DIPOLAR_COMPONENTS + c];
        for (li, row) in regularized.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += xk(li, c) / spec.batches as f64;
            }
        }
        let t: [f64; DIPOLAR_COMPONENTS] = std::array::from_fn(|c| extrapolate(&s, [xk(0, c), xk(1, c), xk(2, c)]));
        let [txx, tyy, tzz, txz] = t;
        per_batch.push([
            -pref * tzz / 4.0,
            pref * (txx - tyy) / 4.0,
            pref * txz / SQRT_2,
            -pref * (txx + tyy + tzz) / 4.0,
        ]);
    }
    let est = |c: usize| Estimate::from_batches(per_batch.iter().map(|v| v[c]));
    let out = SpinSpinEstimate {
        delta: est(0),
        delta_prime: est(1),
        delta_double_prime: est(2),
        trace: est(3),
        regularized,
        regularization_angstrom: s,
    };
    if !regularized.iter().flatten().all(|v| v.is_finite()) {
        return Err(Error::Integration {
            what: "regularised dipolar kernel near r = 0".into(),
            value: f64::NAN,
            error: f64::NAN,
        });
    }
    check_set(
        "spin-spin parameter",
        &[("Δ", out.delta), ("Δ′", out.delta_prime), ("Δ″", out.delta_double_prime)],
        spec,
    )?;
    if !out.is_traceless(3.0) {
        return Err(Error::Integration {
            what: "traceless dipolar identity".into(),
            value: out.trace.value,
            error: out.trace.error,
        });
    }
    Ok(out)
}

/// One point of a nitrogen-population sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinSpinSweepPoint {
    pub nitrogen_population: f64,
    pub carbon_scale: f64,
    pub nitrogen_scale: f64,
    pub estimate: SpinSpinEstimate,
}

/// Δ, Δ′, Δ″ against p_N at fixed geometry and width. Every point reuses the
/// same random streams, so the curves are smooth in p_N.
pub fn spin_spin_sweep(
    geom: &DefectGeometry,
    width: f64,
    populations: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<SpinSpinSweepPoint>> {
    populations
        .iter()
        .map(|&p| {
            let model = GaussianOrbitalModel::new(width, p)?;
            let orbitals = build_orbitals(geom, &model)?;
            Ok(SpinSpinSweepPoint {
                nitrogen_population: p,
                carbon_scale: geom.carbon_scale,
                nitrogen_scale: geom.nitrogen_scale,
                estimate: spin_spin_parameters(&orbitals, spec)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Mixed,
}

/// Trend of one parameter along a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trend {
    pub parameter: &'static str,
    pub monotonicity: Monotonicity,
    /// Linearly interpolated p_N where the parameter changes sign.
    pub sign_changes: Vec<f64>,
}

pub fn sweep_trends(points: &[SpinSpinSweepPoint]) -> Vec<Trend> {
    type Series = (&'static str, fn(&SpinSpinEstimate) -> f64);
    let series: [Series; 3] = [
        ("delta", |e| e.delta.value),
        ("delta_prime", |e| e.delta_prime.value),
        ("delta_double_prime", |e| e.delta_double_prime.value),
    ];
    series
        .iter()
        .map(|(name, f)| {
            let ys: Vec<(f64, f64)> = points.iter().map(|p| (p.nitrogen_population, f(&p.estimate))).collect();
            let steps: Vec<f64> = ys.windows(2).map(|w| w[1].1 - w[0].1).collect();
            let monotonicity = if steps.iter().all(|d| *d >= 0.0) {
                Monotonicity::Increasing
            } else if steps.iter().all(|d| *d <= 0.0) {
                Monotonicity::Decreasing
            } else {
                Monotonicity::Mixed
            };
            let sign_changes = ys
                .windows(2)
                .filter(|w| w[0].1 * w[1].1 < 0.0)
                .map(|w| w[0].0 + (w[1].0 - w[0].0) * w[0].1 / (w[0].1 - w[1].1))
                .collect();
            Trend { parameter: name, monotonicity, sign_changes }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> QuadratureSpec {
        QuadratureSpec { samples: 1 << 16, batches: 16, target_relative_error: 0.2, ..Default::default() }
    }

    #[test]
    fn tensor_layout() {
        let t = tensor_from(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(t.get(0, 0, 0, 0).re, 1.0);
        assert_eq!(t.get(0, 1, 0, 1).re, 4.0);
        assert_eq!(t.get(0, 0, 1, 1).re, 3.0);
        assert_eq!(t.get(0, 1, 1, 0).re, 3.0);
        assert_eq!(t.get(0, 0, 0, 1).re, 5.0);
        assert_eq!(t.get(2, 0, 0, 0).re, 0.0);
    }

    #[test]
    fn default_coulomb_ordering() {
        let o = build_orbitals(&DefectGeometry::default(), &GaussianOrbitalModel::default()).unwrap();
        let c = coulomb_tensor(&o, &small_spec()).unwrap();
        let e = c.exchange();
        assert!(e.value > 0.0 && e.value > 5.0 * e.error);
        let split = c.partner_splitting();
        assert!(split.value.abs() <= 4.0 * split.error, "{split:?}");
    }

    #[test]
    fn sweep_reports_trends() {
        let g = DefectGeometry::default();
        let w = GaussianOrbitalModel::default().width;
        let pts = spin_spin_sweep(&g, w, &[0.0, 0.5, 1.0], &small_spec()).unwrap();
        let t = sweep_trends(&pts);
        assert_eq!(t.len(), 3);
        assert!(pts.iter().all(|p| p.estimate.delta_prime.value > 0.0));
    }
}
