//! Linearized isentropic Euler equations in primitive variables `W = (P, U, V)`.
//!
//! Background states, the Jacobians `A` and `B`, Roe-type flux splitting in
//! an arbitrary normal direction, and the Fourier symbols used by the
//! analysis crates.

pub mod error;
pub mod jacobian;
pub mod split;
pub mod state;
pub mod symbol;

pub use error::CoreError;
pub use jacobian::{jacobians, JacobianPair};
pub use split::{characteristic_basis, flux_split, CharacteristicBasis, FluxSplit};
pub use state::{rotate_to_normal, LinearizationState, NormalFrameState};
pub use symbol::{det3, g_hat, l_hat, symbol_p_hat, symbol_with_derivatives};

pub use nalgebra::{Matrix3, Vector3};
pub use num_complex::Complex64;
