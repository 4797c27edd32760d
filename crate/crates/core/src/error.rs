use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature must have p + q >= 1 (got p = {p}, q = {q})")]
    EmptySignature { p: usize, q: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not pseudo-Hermitian: max |AJ - JA*| = {residual:.3e} exceeds {tol:.3e}")]
    NotPseudoHermitian { residual: f64, tol: f64 },

    #[error("matrix is not pseudo-unitary: max |UJU* - J| = {residual:.3e} exceeds {tol:.3e}")]
    NotPseudoUnitary { residual: f64, tol: f64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid index tuple {indices:?} for bound {bound}: {reason}")]
    InvalidIndexTuple {
        indices: Vec<usize>,
        bound: usize,
        reason: &'static str,
    },

    #[error("vector is null for the indefinite pairing: <x, x> = {pairing:.3e}")]
    NullVector { pairing: f64 },

    #[error("Gram-Schmidt pivot {index} is numerically null: <r, r> = {pivot:.3e}")]
    NullDegeneracy { index: usize, pivot: f64 },

    #[error("vector {index} has pairing sign opposite to the requested orientation (<r, r> = {pivot:.3e})")]
    OrientationMismatch { index: usize, pivot: f64 },

    #[error("basis is rank deficient: smallest singular value {sigma_min:.3e}")]
    RankDeficient { sigma_min: f64 },

    #[error("eigensolver failure: {0}")]
    SolverFailure(String),

    #[error("matrix is defective: eigenpair residual {residual:.3e}")]
    DefectiveMatrix { residual: f64 },

    #[error("spectrum is not real: max |Im lambda| = {defect:.3e} exceeds {tol:.3e}")]
    ComplexSpectrum { defect: f64, tol: f64 },

    #[error("wrong cone counts: {positive} positive-type and {negative} negative-type eigenvectors ({null} null), expected p = {p}, q = {q}")]
    WrongConeCount {
        positive: usize,
        negative: usize,
        null: usize,
        p: usize,
        q: usize,
    },

    #[error("admissibility gap violated: lambda_1 = {lambda_1}, mu_1 = {mu_1}{}", if *other_component { " (matrix lies in the opposite admissible component)" } else { "" })]
    GapViolation {
        lambda_1: f64,
        mu_1: f64,
        other_component: bool,
    },

    #[error("sum of admissible matrices is not admissible: {0}")]
    NotAdmissibleSum(Box<Error>),

    #[error("{what}: retries exhausted after {attempts} attempts")]
    RetriesExhausted { what: &'static str, attempts: usize },

    #[error("orbit of {count} vertices exceeds the cap of {cap}")]
    RegionTooLarge { count: usize, cap: usize },

    #[error("simplex iteration guard tripped after {iterations} pivots")]
    CyclingGuard { iterations: usize },

    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
