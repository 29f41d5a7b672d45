//! First-order cell-centered finite volumes for the linearized Euler system
//! with Roe-type flux splitting on a uniform grid.
//!
//! Unknowns of a strip of columns are stored column by column so that the
//! assembled matrix is banded with half-width about `3 * ny`, and solved
//! with a banded LU factorization.

pub mod banded;
pub mod error;
pub mod field;
pub mod grid;
pub mod operator;
pub mod states;
pub mod tangential;

pub use banded::{BandedLu, BandedMatrix};
pub use error::DiscError;
pub use field::PrimitiveField;
pub use grid::{Grid, YClosure};
pub use operator::{
    assemble_interior, incoming_characteristic_ops, incoming_count, local_solve, OperatorBuilder, Side, SideKind, StripLayout,
    StripSolution, SubdomainOperator,
};
pub use states::{cfl_time_step, StateField};
pub use tangential::{semi_discrete_tangential_ops, TangentialOps};
