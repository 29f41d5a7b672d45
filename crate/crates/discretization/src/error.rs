use euler_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscError {
    #[error("cell row {row}: {source}")]
    BadCell { row: usize, source: CoreError },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("singular matrix: zero pivot in column {0}")]
    Singular(usize),
    #[error("entry ({row}, {col}) lies outside the band")]
    OutOfBand { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0} is an interface side, not a physical boundary")]
    NotPhysical(&'static str),
    #[error("trace conditions on {side}: expected {expected} operators, got {got}")]
    TraceRows { side: &'static str, expected: usize, got: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
