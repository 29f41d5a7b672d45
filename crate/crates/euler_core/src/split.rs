use nalgebra::{Matrix3, Vector3};

use crate::error::CoreError;
use crate::state::{check_normal, LinearizationState};

/// Closed-form eigensystem of `A_n = n_x A + n_y B`.
///
/// Columns of `right` and rows of `left` are ordered as
/// `(u_n - c, u_n, u_n + c)`, and `left * right = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicBasis {
    pub speeds: [f64; 3],
    pub right: Matrix3<f64>,
    pub left: Matrix3<f64>,
}

impl CharacteristicBasis {
    /// Projector onto the span of the characteristics selected by `keep`.
    pub fn projector(&self, keep: impl Fn(f64) -> bool) -> Matrix3<f64> {
        let mut p = Matrix3::zeros();
        for k in 0..3 {
            if keep(self.speeds[k]) {
                p += self.right.column(k) * self.left.row(k);
            }
        }
        p
    }

    pub fn left_row(&self, k: usize) -> Vector3<f64> {
        self.left.row(k).transpose()
    }
}

pub fn characteristic_basis(state: &LinearizationState, normal: [f64; 2]) -> Result<CharacteristicBasis, CoreError> {
    check_normal(normal)?;
    let [nx, ny] = normal;
    let LinearizationState { rho_bar: rho, u_bar: u, v_bar: v, c_bar: c, .. } = *state;
    let un = u * nx + v * ny;
    let rc = rho * c;
    #[rustfmt::skip]
    let right = Matrix3::new(
        -rc, 0.0, rc,
        nx,  -ny, nx,
        ny,  nx,  ny,
    );
    let h = 0.5 / rc;
    #[rustfmt::skip]
    let left = Matrix3::new(
        -h,  0.5 * nx, 0.5 * ny,
        0.0, -ny,      nx,
        h,   0.5 * nx, 0.5 * ny,
    );
    Ok(CharacteristicBasis { speeds: [un - c, un, un + c], right, left })
}

/// Roe-type splitting `A_n = A_n^+ + A_n^-`, `|A_n| = A_n^+ - A_n^-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxSplit {
    pub a_plus: Matrix3<f64>,
    pub a_minus: Matrix3<f64>,
    pub a_abs: Matrix3<f64>,
}

pub fn flux_split(state: &LinearizationState, normal: [f64; 2]) -> Result<FluxSplit, CoreError> {
    state.validate()?;
    let basis = characteristic_basis(state, normal)?;
    let mut a_plus = Matrix3::zeros();
    let mut a_minus = Matrix3::zeros();
    for k in 0..3 {
        let outer = basis.right.column(k) * basis.left.row(k);
        let s = basis.speeds[k];
        a_plus += outer * s.max(0.0);
        a_minus += outer * s.min(0.0);
    }
    Ok(FluxSplit { a_plus, a_minus, a_abs: a_plus - a_minus })
}
