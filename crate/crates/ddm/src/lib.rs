//! Non-overlapping strip decompositions of the finite-volume Euler problem:
//! the classical characteristic-transmission iteration and the new
//! correction/update iteration.

pub mod conditions;
pub mod decomposition;
pub mod error;
pub mod rig;
pub mod solver;

pub use conditions::InterfaceOps;
pub use decomposition::Decomposition;
pub use discrete_fourier::{Ordering, Stabilization};
pub use error::DdmError;
pub use rig::{make_variable_state, single_mode_field, Profile, Rig, RigSpec};
pub use solver::{random_field, run_from, run_to_convergence, DdmSolver, InterfaceData, Iterate, IterationLog, Method, RunConfig};
