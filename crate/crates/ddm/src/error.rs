use discretization::DiscError;
use euler_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DdmError {
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    State(#[from] CoreError),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("interface {interface}: initial pressures differ by {gap:e}")]
    Incompatible { interface: usize, gap: f64 },
    #[error("invalid profile: {0}")]
    Profile(String),
}
