use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{func}: domain error: {reason}")]
    Domain { func: &'static str, reason: String },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("adaptive quadrature exhausted {subdivisions} subdivisions (best estimate {estimate:e}, error estimate {error:e})")]
    SubdivisionBudget { subdivisions: usize, estimate: f64, error: f64 },

    #[error("quadrature degree n_q = {n_q} exceeds the supported maximum {max}; use a smaller n_q")]
    QuadTooLarge { n_q: usize, max: usize },

    #[error("sample vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("samples were taken on grid (n = {sample_n}, lambda = {sample_lambda}, fingerprint {sample_fp:016x}) but the matrix expects (n = {matrix_n}, lambda = {matrix_lambda}, fingerprint {matrix_fp:016x})")]
    GridMismatch {
        matrix_n: usize,
        matrix_lambda: f64,
        matrix_fp: u64,
        sample_n: usize,
        sample_lambda: f64,
        sample_fp: u64,
    },

    #[error("not an FSGIM file (bad magic bytes)")]
    BadMagic,

    #[error("unsupported FSGIM schema version {found} (this build reads version {supported})")]
    SchemaVersion { found: u32, supported: u32 },

    #[error("FSGIM checksum mismatch: {0}")]
    Checksum(String),

    #[error("malformed FSGIM file: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(func: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { func, reason: reason.into() }
    }
}
