use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::state::LinearizationState;

/// Fourier symbol of the linearized operator with `d/dx -> lambda`, `d/dy -> i xi`.
pub fn symbol_p_hat(state: &LinearizationState, xi: f64, lambda: Complex64) -> Matrix3<Complex64> {
    symbol_with_derivatives(state, lambda, Complex64::new(0.0, xi))
}

/// `beta I + A kx + B ky` for arbitrary complex symbols of the two derivatives.
pub fn symbol_with_derivatives(state: &LinearizationState, kx: Complex64, ky: Complex64) -> Matrix3<Complex64> {
    let LinearizationState { rho_bar: rho, u_bar: u, v_bar: v, c_bar: c, beta } = *state;
    let g = kx * u + ky * v + beta;
    let rc2 = rho * c * c;
    let zero = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix3::new(
        g,        kx * rc2, ky * rc2,
        kx / rho, g,        zero,
        ky / rho, zero,     g,
    );
    m
}

/// Transport symbol `beta + u lambda + i xi v`.
pub fn g_hat(state: &LinearizationState, xi: f64, lambda: Complex64) -> Complex64 {
    Complex64::new(state.beta, xi * state.v_bar) + lambda * state.u_bar
}

/// Advective wave symbol.
pub fn l_hat(state: &LinearizationState, xi: f64, lambda: Complex64) -> Complex64 {
    let LinearizationState { u_bar: u, v_bar: v, c_bar: c, beta, .. } = *state;
    let i = Complex64::i();
    beta * beta + 2.0 * i * xi * u * v * lambda + 2.0 * beta * (u * lambda + i * xi * v) + (c * c - v * v) * xi * xi
        - (c * c - u * u) * lambda * lambda
}

/// Cofactor expansion along the first row.
pub fn det3(m: &Matrix3<Complex64>) -> Complex64 {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)]) - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_frequency() {
        let s = LinearizationState::new(1.0, 0.4, 0.1, 1.0, 2.5).unwrap();
        let m = symbol_p_hat(&s, 0.0, c(0.0, 0.0));
        for k in 0..3 {
            assert_eq!(m[(k, k)], c(2.5, 0.0));
        }
        assert_eq!(g_hat(&s, 0.0, c(0.0, 0.0)), c(2.5, 0.0));
        assert_eq!(l_hat(&s, 0.0, c(0.0, 0.0)), c(6.25, 0.0));
    }

    #[test]
    fn transport_root_kills_determinant() {
        let s = LinearizationState::new(1.0, 0.4, 0.0, 1.0, 2.0).unwrap();
        let lam3 = c(-s.beta / s.u_bar, 0.0);
        assert!(det3(&symbol_p_hat(&s, 0.0, lam3)).norm() < 1e-14);
        assert!(g_hat(&s, 0.0, lam3).norm() < 1e-15);
    }

    #[test]
    fn det3_matches_lu() {
        let m = Matrix3::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(0.3, -0.2), c(2.0, 0.0), c(0.0, 1.0), c(1.0, 1.0), c(-0.5, 0.5), c(3.0, -1.0));
        let d = m.determinant();
        assert!((det3(&m) - d).norm() < 1e-12);
    }
}
