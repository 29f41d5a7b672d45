//! Wavenumber-by-wavenumber analysis of the discrete two-strip iteration:
//! discrete modes of the finite-volume scheme and the resulting convergence
//! rate of the interface map.

pub mod curve;
pub mod error;
pub mod modes;
pub mod poly;
pub mod rate;

pub use curve::{rate_curve, rate_curve_with, sample_wavenumbers, RateCurve};
pub use error::FourierError;
pub use modes::{discrete_modes, pencil, pencil_residual, DiscreteModeSet, DiscreteRoot};
pub use rate::{
    correction_symbol, discrete_convergence_rate, discrete_convergence_rate_with, interface_map, tangential_symbols,
    InterfaceMap, Ordering, RateReport, Stabilization, TangentialSymbols, Variant,
};
