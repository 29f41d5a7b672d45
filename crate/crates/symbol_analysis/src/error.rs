use euler_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error(transparent)]
    State(#[from] CoreError),
    #[error("sonic state: c^2 - u^2 = {0:e}")]
    Sonic(f64),
    #[error("xi = 0 is excluded from the two-step check")]
    ZeroWavenumber,
    #[error("degenerate interface system: {0}")]
    Degenerate(&'static str),
}
