//! Continuous Fourier analysis of the two-subdomain algorithm for the scalar
//! third-order operator `L G`.
//!
//! Per tangential wavenumber `xi` the homogeneous equation has three modes
//! `exp(lambda_l x)`. [`lambda_roots`] computes them and
//! [`continuous_two_step_check`] runs one full correction/update cycle on
//! the mode coefficients and reports what is left after the second iterate.

mod error;
mod modes;
mod two_step;

pub use error::SymbolError;
pub use modes::{lambda_roots, ContinuousModes};
pub use two_step::{
    continuous_two_step_check, correction_closed_form, two_step_check_any_xi, AlphaState, TwoStepReport,
};
