use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("character vector does not reduce: multiplicity of {irrep} is {value}")]
    NonIntegerMultiplicity { irrep: String, value: String },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("states are not orthonormal (max |S^dagger S - I| = {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("strain tensor is not symmetric (max |e - e^T| = {defect:e})")]
    AsymmetricStrain { defect: f64 },

    #[error("two-body tensor violates {symmetry} symmetry (defect {defect:e})")]
    TensorSymmetry { symmetry: &'static str, defect: f64 },

    #[error("orbital {orbital} cannot be normalised (norm^2 = {norm_sq:e})")]
    Normalization { orbital: &'static str, norm_sq: f64 },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("integration did not converge: {what} (value {value:e}, error estimate {error:e})")]
    Integration { what: String, value: f64, error: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
