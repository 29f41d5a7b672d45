use euler_core::{Complex64, LinearizationState};
use nalgebra::{Matrix3, Vector3};

use crate::error::SymbolError;
use crate::modes::{lambda_roots, ContinuousModes};

/// Mode coefficients of one iterate and of its correction.
///
/// `e1 = alpha1 exp(lambda1 x)` on the upstream side and
/// `e2 = alpha2 exp(lambda2 x) + alpha3 exp(lambda3 x)` downstream;
/// the `tilde` fields hold the same for the correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaState {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub alpha3: Complex64,
    pub tilde1: Complex64,
    pub tilde2: Complex64,
    pub tilde3: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStepReport {
    pub xi: f64,
    pub alpha_gamma: Complex64,
    pub first: AlphaState,
    pub gamma: Complex64,
    pub delta: Complex64,
    /// Coefficients of the second iterate.
    pub second: [Complex64; 3],
    pub max_abs: f64,
    /// `max_abs` over the largest first-iterate or correction coefficient.
    pub relative: f64,
}

struct Pieces {
    m: ContinuousModes,
    g: [Complex64; 3],
    n: [Complex64; 3],
    beta_u: f64,
}

impl Pieces {
    fn new(state: &LinearizationState, xi: f64) -> Result<Self, SymbolError> {
        let m = lambda_roots(state, xi)?;
        let LinearizationState { u_bar: u, v_bar: v, c_bar: c, beta, .. } = *state;
        let d = c * c - u * u;
        let cross = Complex64::new(0.0, xi * u * v);
        let lam = m.all();
        // transport symbol and conormal derivative A grad . n1 of each mode
        let g = lam.map(|l| m.a_xi + u * l);
        let n = lam.map(|l| d * l - cross);
        Ok(Self { m, g, n, beta_u: beta * u })
    }

    fn b1(&self, k: usize) -> Complex64 {
        (self.n[k] - self.beta_u) * self.g[k]
    }

    fn b2(&self, k: usize) -> Complex64 {
        (self.beta_u - self.n[k]) * self.g[k]
    }
}

fn solve3(m: Matrix3<Complex64>, rhs: Vector3<Complex64>, what: &'static str) -> Result<Vector3<Complex64>, SymbolError> {
    m.lu().solve(&rhs).ok_or(SymbolError::Degenerate(what))
}

/// Closed form of the correction coefficients for a given `alpha_gamma`.
pub fn correction_closed_form(state: &LinearizationState, xi: f64, alpha_gamma: Complex64) -> Result<[Complex64; 3], SymbolError> {
    let m = lambda_roots(state, xi)?;
    let (u, c) = (state.u_bar, state.c_bar);
    let plus = m.a_xi * c + u * m.r_xi;
    let minus = m.a_xi * c - u * m.r_xi;
    Ok([-alpha_gamma / plus, -alpha_gamma / minus, alpha_gamma / minus])
}

/// One correction plus one update, starting from a first iterate whose
/// transport traces agree (`G e1 = G e2` on the interface).
pub fn continuous_two_step_check(state: &LinearizationState, xi: f64, alpha_gamma: Complex64) -> Result<TwoStepReport, SymbolError> {
    if xi == 0.0 {
        return Err(SymbolError::ZeroWavenumber);
    }
    two_step_check_any_xi(state, xi, alpha_gamma)
}

/// Same as [`continuous_two_step_check`] without the `xi != 0` guard.
pub fn two_step_check_any_xi(state: &LinearizationState, xi: f64, alpha_gamma: Complex64) -> Result<TwoStepReport, SymbolError> {
    let p = Pieces::new(state, xi)?;
    let m = &p.m;
    let (u, c) = (state.u_bar, state.c_bar);
    let plus = m.a_xi * c + u * m.r_xi;
    let minus = m.a_xi * c - u * m.r_xi;
    if plus.norm() == 0.0 || minus.norm() == 0.0 {
        return Err(SymbolError::Degenerate("a c +- u R vanishes"));
    }
    let alpha1 = alpha_gamma / plus;
    let alpha2 = alpha_gamma / minus;
    // the lambda3 component is invisible to G and may be anything
    let alpha3 = alpha_gamma;

    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let gamma = -0.5 * (p.n[0] * p.g[0] * alpha1 - p.n[1] * p.g[1] * alpha2 - p.n[2] * p.g[2] * alpha3);

    #[rustfmt::skip]
    let corr = Matrix3::new(
        p.b1(0), zero,    zero,
        zero,    p.b2(1), p.b2(2),
        zero,    one,     one,
    );
    let t = solve3(corr, Vector3::new(gamma, gamma, zero), "correction system")?;
    let delta = 0.5 * (p.g[0] * t[0] + p.g[1] * t[1] + p.g[2] * t[2]);

    #[rustfmt::skip]
    let upd = Matrix3::new(
        p.g[0], zero,   zero,
        zero,   p.g[1], p.g[2],
        zero,   one,    one,
    );
    let rhs = Vector3::new(p.g[0] * alpha1 + delta, p.g[1] * alpha2 + p.g[2] * alpha3 + delta, alpha1 + t[0]);
    let second = solve3(upd, rhs, "update system")?;

    let max_abs = second.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = [alpha1, alpha2, t[0], t[1], t[2]].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let relative = if scale > 0.0 { max_abs / scale } else { max_abs };
    Ok(TwoStepReport {
        xi,
        alpha_gamma,
        first: AlphaState { alpha1, alpha2, alpha3, tilde1: t[0], tilde2: t[1], tilde3: t[2] },
        gamma,
        delta,
        second: [second[0], second[1], second[2]],
        max_abs,
        relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st() -> LinearizationState {
        LinearizationState::new(1.0, 0.3, 0.2, 1.0, 1.0).unwrap()
    }

    #[test]
    fn second_iterate_vanishes() {
        let r = continuous_two_step_check(&st(), 1.0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(r.relative < 1e-13, "{r:?}");
    }

    #[test]
    fn zero_input_gives_zero() {
        let r = continuous_two_step_check(&st(), 2.0, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(r.max_abs, 0.0);
    }

    #[test]
    fn zero_wavenumber_is_guarded() {
        assert_eq!(continuous_two_step_check(&st(), 0.0, Complex64::new(1.0, 0.0)), Err(SymbolError::ZeroWavenumber));
        let r = two_step_check_any_xi(&st(), 0.0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(r.relative < 1e-13);
    }

    #[test]
    fn first_iterate_has_matching_transport_traces() {
        let s = st();
        let r = continuous_two_step_check(&s, 0.7, Complex64::new(0.3, -1.1)).unwrap();
        let m = lambda_roots(&s, 0.7).unwrap();
        let g1 = (m.a_xi + s.u_bar * m.lambda1) * r.first.alpha1;
        let g2 = (m.a_xi + s.u_bar * m.lambda2) * r.first.alpha2;
        assert!((g1 - g2).norm() < 1e-14);
    }
}
