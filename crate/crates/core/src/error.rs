use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix of {rows}x{cols} exceeds the configured maximum dimension {max}")]
    TooLarge { rows: usize, cols: usize, max: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("{what} failed to converge after {iterations} iterations (eps = {eps:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        eps: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("t = {t} is outside the admissible interval [{lower}, {upper}]")]
    InadmissibleT { t: f64, lower: f64, upper: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("MUM families differ in kappa ({a} vs {b})")]
    KappaMismatch { a: f64, b: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Format(String),
}

impl Error {
    /// Numerical failures (as opposed to bad input) map to a distinct exit code
    /// in the command-line tool.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
