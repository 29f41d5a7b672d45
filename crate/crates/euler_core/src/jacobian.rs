use nalgebra::Matrix3;

use crate::state::LinearizationState;

/// The x- and y-Jacobians of the linearized system in `(P, U, V)` variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianPair {
    pub a: Matrix3<f64>,
    pub b: Matrix3<f64>,
}

impl JacobianPair {
    /// `n_x A + n_y B`.
    pub fn along(&self, normal: [f64; 2]) -> Matrix3<f64> {
        self.a * normal[0] + self.b * normal[1]
    }
}

pub fn jacobians(state: &LinearizationState) -> JacobianPair {
    let LinearizationState { rho_bar: rho, u_bar: u, v_bar: v, c_bar: c, .. } = *state;
    let rc2 = rho * c * c;
    #[rustfmt::skip]
    let a = Matrix3::new(
        u,         rc2, 0.0,
        1.0 / rho, u,   0.0,
        0.0,       0.0, u,
    );
    #[rustfmt::skip]
    let b = Matrix3::new(
        v,         0.0, rc2,
        0.0,       v,   0.0,
        1.0 / rho, 0.0, v,
    );
    JacobianPair { a, b }
}
