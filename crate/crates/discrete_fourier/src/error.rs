use euler_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error(transparent)]
    State(#[from] CoreError),
    #[error("wavenumber {xi} outside (-pi/dy, pi/dy]")]
    Wavenumber { xi: f64 },
    #[error("expected 1 root outside and 2 inside the unit circle, found {outside} and {inside}")]
    ModeCount { outside: usize, inside: usize },
    #[error("companion eigenvalue computation failed")]
    Roots,
    #[error("singular interface system: {0}")]
    Singular(&'static str),
    #[error("need at least 2 samples, got {0}")]
    Samples(usize),
}
