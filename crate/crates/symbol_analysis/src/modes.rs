use euler_core::{g_hat, l_hat, Complex64, LinearizationState};

use crate::error::SymbolError;

/// Roots `lambda_1, lambda_2, lambda_3` of `L G exp(lambda x) = 0` for one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousModes {
    pub xi: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda3: Complex64,
    /// `beta + i xi v`
    pub a_xi: Complex64,
    /// `sqrt(a^2 + xi^2 (c^2 - u^2))`, principal branch.
    pub r_xi: Complex64,
}

impl ContinuousModes {
    pub fn all(&self) -> [Complex64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    /// Largest of `|L(lambda_1)|, |L(lambda_2)|, |G(lambda_3)|`.
    pub fn residual(&self, state: &LinearizationState) -> f64 {
        let l1 = l_hat(state, self.xi, self.lambda1).norm();
        let l2 = l_hat(state, self.xi, self.lambda2).norm();
        let g3 = g_hat(state, self.xi, self.lambda3).norm();
        l1.max(l2).max(g3)
    }
}

pub fn lambda_roots(state: &LinearizationState, xi: f64) -> Result<ContinuousModes, SymbolError> {
    state.validate()?;
    state.require_outflow()?;
    let LinearizationState { u_bar: u, v_bar: v, c_bar: c, beta, .. } = *state;
    let d = c * c - u * u;
    if d <= f64::EPSILON * c * c {
        return Err(SymbolError::Sonic(d));
    }
    let a = Complex64::new(beta, xi * v);
    let r = (a * a + xi * xi * d).sqrt();
    Ok(ContinuousModes {
        xi,
        lambda1: (u * a + c * r) / d,
        lambda2: (u * a - c * r) / d,
        lambda3: -a / u,
        a_xi: a,
        r_xi: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_wavenumber_roots() {
        let s = LinearizationState::new(1.0, 0.5, 0.0, 1.0, 1.0).unwrap();
        let m = lambda_roots(&s, 0.0).unwrap();
        assert!((m.lambda1 - 2.0).norm() < 1e-14);
        assert!((m.lambda2 + 2.0 / 3.0).norm() < 1e-14);
        assert!((m.lambda3 + 2.0).norm() < 1e-14);
    }

    #[test]
    fn even_in_xi_without_tangential_flow() {
        let s = LinearizationState::new(1.3, 0.2, 0.0, 0.9, 3.0).unwrap();
        for xi in [0.1, 1.0, 7.5] {
            let p = lambda_roots(&s, xi).unwrap();
            let m = lambda_roots(&s, -xi).unwrap();
            for (x, y) in p.all().iter().zip(m.all().iter()) {
                assert!((x - y).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_outflow() {
        let s = LinearizationState::new(1.0, -0.2, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(lambda_roots(&s, 1.0), Err(SymbolError::State(_))));
    }

    #[test]
    fn roots_annihilate_symbols() {
        let s = LinearizationState::new(1.0, 0.3, 0.2, 1.0, 1.0).unwrap();
        let m = lambda_roots(&s, 1.0).unwrap();
        assert!(m.residual(&s) < 1e-13);
        assert!(m.lambda1.re > 0.0 && m.lambda2.re < 0.0 && m.lambda3.re < 0.0);
    }
}
