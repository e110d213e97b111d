use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid strategy density: {0}")]
    InvalidDensity(String),

    #[error("payoff has imaginary part {im:.3e} above tolerance")]
    ImaginaryPayoff { im: f64 },

    #[error("unknown base strategy `{0}` (expected Nc, Fc, Nq or Fq)")]
    UnknownBase(String),

    #[error("invalid game definition: {0}")]
    InvalidGame(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
