use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("sound speed must be positive, got {0}")]
    NonPositiveSoundSpeed(f64),
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error("state is not subsonic: |velocity| = {speed} >= c = {c}")]
    NotSubsonic { speed: f64, c: f64 },
    #[error("analysis states need 0 < u < c, got u = {u}, c = {c}")]
    NotOutflow { u: f64, c: f64 },
    #[error("normal vector must have unit length, got |n| = {0}")]
    NonUnitNormal(f64),
    #[error("non-finite value in field `{0}`")]
    NonFinite(&'static str),
}
