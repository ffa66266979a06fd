use serde::{Deserialize, Serialize};

/// Dangling-bond model of the electron-ion interaction (any energy unit).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleParticleParams {
    /// On-site carbon term.
    pub v_c: f64,
    /// On-site nitrogen term.
    pub v_n: f64,
    /// Carbon-carbon hopping.
    pub h_c: f64,
    /// Carbon-nitrogen hopping.
    pub h_n: f64,
}

impl Default for SingleParticleParams {
    fn default() -> Self {
        SingleParticleParams { v_c: -10.0, v_n: -12.0, h_c: -1.0, h_n: -0.5 }
    }
}

/// Spin-orbit and spin-spin constants of the excited triplet, GHz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FineStructureParams {
    #[serde(rename = "lambda_z_ghz")]
    pub lambda_z: f64,
    #[serde(rename = "lambda_xy_ghz")]
    pub lambda_xy: f64,
    #[serde(rename = "delta_ghz")]
    pub delta: f64,
    #[serde(rename = "delta_prime_ghz")]
    pub delta_prime: f64,
    #[serde(rename = "delta_double_prime_ghz")]
    pub delta_double_prime: f64,
}

impl Default for FineStructureParams {
    /// λz = 5.5, λxy = 7.3; spin-spin values correspond to a 1.42 GHz
    /// zero-field splitting, a 3.1 GHz A1-A2 gap and a 0.2 GHz mixing term.
    fn default() -> Self {
        FineStructureParams {
            lambda_z: 5.5,
            lambda_xy: 7.3,
            delta: 1.42 / 3.0,
            delta_prime: 3.1 / 4.0,
            delta_double_prime: 0.2,
        }
    }
}

impl FineStructureParams {
    pub fn zero() -> Self {
        FineStructureParams { lambda_z: 0.0, lambda_xy: 0.0, delta: 0.0, delta_prime: 0.0, delta_double_prime: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        [self.lambda_z, self.lambda_xy, self.delta, self.delta_prime, self.delta_double_prime]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Inverse piezoelectric tensor components and strain coupling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiezoParams {
    /// Strain per field, (MV/m)^-1.
    #[serde(rename = "a_per_mv_m")]
    pub a: f64,
    #[serde(rename = "b_per_mv_m")]
    pub b: f64,
    #[serde(rename = "c_per_mv_m")]
    pub c: f64,
    #[serde(rename = "d_per_mv_m")]
    pub d: f64,
    /// Orbital energy per unit strain, GHz.
    #[serde(rename = "g_ghz")]
    pub g: f64,
}

impl Default for PiezoParams {
    fn default() -> Self {
        PiezoParams { a: 0.3e-6, b: 0.3e-6, c: 0.3e-6, d: 3e-6, g: 2e6 }
    }
}

impl PiezoParams {
    /// Relative excited-minus-ground slope for an axial field, GHz per MV/m.
    pub fn axial_relative_slope(&self) -> f64 {
        self.g * (self.d - self.b)
    }

    /// Splitting slope of the excited triplet for a transverse field, GHz per MV/m.
    pub fn transverse_splitting_slope(&self) -> f64 {
        2.0 * self.g * self.a
    }
}
