use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::I;

/// Polarisation class of an emission amplitude (x̂, ŷ components).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Polarization {
    #[serde(rename = "sigma+")]
    SigmaPlus,
    #[serde(rename = "sigma-")]
    SigmaMinus,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    /// Linear along some other axis.
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "elliptical")]
    Elliptical,
    #[serde(rename = "forbidden")]
    Forbidden,
}

impl Polarization {
    pub fn label(self) -> &'static str {
        match self {
            Polarization::SigmaPlus => "σ+",
            Polarization::SigmaMinus => "σ−",
            Polarization::X => "x",
            Polarization::Y => "y",
            Polarization::Linear => "linear",
            Polarization::Elliptical => "elliptical",
            Polarization::Forbidden => "-",
        }
    }

    /// σ± iff |a_y ∓ i a_x| < tol·‖a‖; linear iff the circular degree is
    /// below tol; x or y when the other component vanishes to tol·‖a‖.
    pub fn classify(ax: Complex64, ay: Complex64, tol: f64) -> Self {
        let norm = (ax.norm_sqr() + ay.norm_sqr()).sqrt();
        if norm < 1e-14 {
            return Polarization::Forbidden;
        }
        if (ay - I * ax).norm() < tol * norm {
            return Polarization::SigmaPlus;
        }
        if (ay + I * ax).norm() < tol * norm {
            return Polarization::SigmaMinus;
        }
        let report = PolarizationReport::from_amplitudes(ax, ay);
        if report.circular_degree.abs() >= tol {
            return Polarization::Elliptical;
        }
        if ay.norm() < tol * norm {
            Polarization::X
        } else if ax.norm() < tol * norm {
            Polarization::Y
        } else {
            Polarization::Linear
        }
    }
}

/// Stokes-style summary of one emission amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolarizationReport {
    /// (|c+|² − |c−|²)/(|c+|² + |c−|²) with c± = (a_x ∓ i a_y)/√2; +1 is σ+.
    pub circular_degree: f64,
    /// Axis of the linear part in the xy plane, radians in (−π/2, π/2];
    /// absent for purely circular or forbidden transitions.
    pub linear_axis: Option<f64>,
    /// |a_x|² + |a_y|².
    pub intensity: f64,
}

impl PolarizationReport {
    pub fn from_amplitudes(ax: Complex64, ay: Complex64) -> Self {
        let intensity = ax.norm_sqr() + ay.norm_sqr();
        if intensity < 1e-28 {
            return PolarizationReport { circular_degree: 0.0, linear_axis: None, intensity: 0.0 };
        }
        let cp = (ax - I * ay) * FRAC_1_SQRT_2;
        let cm = (ax + I * ay) * FRAC_1_SQRT_2;
        let circular_degree = (cp.norm_sqr() - cm.norm_sqr()) / intensity;
        let s1 = ax.norm_sqr() - ay.norm_sqr();
        let s2 = 2.0 * (ax * ay.conj()).re;
        let linear_axis = if s1.hypot(s2) > 1e-8 * intensity { Some(0.5 * s2.atan2(s1)) } else { None };
        PolarizationReport { circular_degree, linear_axis, intensity }
    }

    /// 1 − |circular degree|: 0 for circular light, 1 for linear.
    pub fn linear_fraction(&self) -> f64 {
        1.0 - self.circular_degree.abs()
    }
}

/// Smallest difference between two linear axes, modulo π, in radians.
pub fn axis_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::PI);
    d.min(std::f64::consts::PI - d)
}
