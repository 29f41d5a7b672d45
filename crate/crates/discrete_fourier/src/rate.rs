use discretization::Grid;
use euler_core::{characteristic_basis, LinearizationState, Matrix3, Vector3};
use nalgebra::{Matrix2, Matrix3x2};
use num_complex::Complex64;

use crate::error::FourierError;
use crate::modes::discrete_modes;

/// Pressure term of the correction condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stabilization {
    /// Plain upwind coefficient on `U`, no pressure term.
    None,
    /// Roe dissipation `D_my` on `U` and `u dy / (rho c) D+ D-` on `P`.
    Laplacian,
}

/// Source of the `P + rho u U` data for the downstream update solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// Previous upstream trace plus its correction.
    Jacobi,
    /// Upstream trace of the current update, swept left to right.
    GaussSeidel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Stabilized,
    Unstabilized,
    Classical,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Stabilized => "stabilized",
            Variant::Unstabilized => "unstabilized",
            Variant::Classical => "classical",
        }
    }

    pub fn stabilization(self) -> Option<Stabilization> {
        match self {
            Variant::Stabilized => Some(Stabilization::Laplacian),
            Variant::Unstabilized => Some(Stabilization::None),
            Variant::Classical => None,
        }
    }
}

/// Symbols of `D-`, `D+`, `D_my`, `D_py` for `exp(i xi y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentialSymbols {
    pub dm: Complex64,
    pub dp: Complex64,
    pub dmy: Complex64,
    pub dpy: Complex64,
}

pub fn tangential_symbols(state: &LinearizationState, dy: f64, xi: f64) -> TangentialSymbols {
    let e = Complex64::from_polar(1.0, xi * dy);
    let dm = (1.0 - 1.0 / e) / dy;
    let dp = (e - 1.0) / dy;
    let a = 0.5 * (state.c_bar + state.v_bar);
    let b = 0.5 * (state.c_bar - state.v_bar);
    TangentialSymbols { dm, dp, dmy: a * dm - b * dp, dpy: a * dm + b * dp }
}

/// Row vector `r` with `r . (P, U, V)` the symbol of the correction condition.
pub fn correction_symbol(state: &LinearizationState, beta: f64, dy: f64, xi: f64, stab: Stabilization) -> Vector3<Complex64> {
    let s = tangential_symbols(state, dy, xi);
    let LinearizationState { rho_bar: rho, u_bar: u, v_bar: v, c_bar: c, .. } = *state;
    let vcoef = -(u / c) * s.dpy;
    match stab {
        Stabilization::None => {
            Vector3::new(Complex64::new(0.0, 0.0), beta + v.max(0.0) * s.dm + v.min(0.0) * s.dp, vcoef)
        }
        Stabilization::Laplacian => Vector3::new(u * dy / (rho * c) * s.dp * s.dm, beta + s.dmy, vcoef),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub xi: f64,
    pub rho: f64,
    pub marginal: bool,
    /// Some bounded mode is invisible to both interface conditions of a
    /// local solve (the checkerboard `V` mode at `xi = pi/dy` when `v = 0`);
    /// its amplitude is taken as zero.
    pub degenerate: bool,
}

/// One-iteration interface map on the bounded-mode amplitudes
/// `(alpha_1 | alpha_2, alpha_3)` and, for the new method, an orthonormal
/// basis of the pressure-compatible subspace it preserves.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceMap {
    pub xi: f64,
    pub map: Matrix3<Complex64>,
    pub compatible: Option<Matrix3x2<Complex64>>,
    pub marginal: bool,
    /// A local interface system was rank deficient (see [`RateReport::degenerate`]).
    pub degenerate: bool,
}

impl InterfaceMap {
    pub fn spectral_radius(&self) -> f64 {
        match &self.compatible {
            Some(q) => {
                let b: Matrix2<Complex64> = q.adjoint() * self.map * q;
                let tr = b.trace();
                let det = b.determinant();
                let disc = (tr * tr * 0.25 - det).sqrt();
                (tr * 0.5 + disc).norm().max((tr * 0.5 - disc).norm())
            }
            None => {
                let eig = self.map.schur().eigenvalues().expect("complex Schur form is triangular");
                eig.iter().fold(0.0f64, |m, z| m.max(z.norm()))
            }
        }
    }
}

fn dot(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

const DEGENERATE: f64 = 1e-12;

/// Solves the 2x2 system; a numerically rank-deficient one (a mode the
/// conditions cannot see) gets the minimum-norm least-squares solution and
/// sets `degenerate`.
fn solve2(m: [[Complex64; 2]; 2], r: [Complex64; 2], degenerate: &mut bool) -> Result<[Complex64; 2], FourierError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(0.0f64, |a, z| a.max(z.norm()));
    if scale == 0.0 {
        return Err(FourierError::Singular("zero interface system"));
    }
    if det.norm() > DEGENERATE * scale * scale {
        return Ok([(r[0] * m[1][1] - m[0][1] * r[1]) / det, (m[0][0] * r[1] - r[0] * m[1][0]) / det]);
    }
    *degenerate = true;
    let a = Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
    let x = a.svd(true, true).solve(&nalgebra::Vector2::new(r[0], r[1]), DEGENERATE * scale).map_err(FourierError::Singular)?;
    Ok([x[0], x[1]])
}

/// Orthonormal basis of `{x : phi . x = 0}`.
fn kernel_basis(phi: &Vector3<Complex64>) -> Matrix3x2<Complex64> {
    let n = phi.map(|z| z.conj()).normalize();
    let mut basis: Vec<Vector3<Complex64>> = Vec::new();
    let mut cands: Vec<Vector3<Complex64>> = (0..3)
        .map(|k| {
            let mut e = Vector3::zeros();
            e[k] = Complex64::new(1.0, 0.0);
            e - n * n.dotc(&e)
        })
        .collect();
    cands.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    for mut v in cands {
        for b in &basis {
            v -= b * b.dotc(&v);
        }
        if v.norm() > 1e-8 && basis.len() < 2 {
            basis.push(v.normalize());
        }
    }
    Matrix3x2::from_columns(&[basis[0], basis[1]])
}

pub fn interface_map(
    state: &LinearizationState,
    grid: &Grid,
    xi: f64,
    variant: Variant,
    ordering: Ordering,
) -> Result<InterfaceMap, FourierError> {
    state.require_outflow()?;
    let modes = discrete_modes(state, grid, xi)?;
    let up = modes.upstream()?;
    let down = modes.downstream()?;
    let basis = characteristic_basis(state, [1.0, 0.0])?;
    let cx = |m: Matrix3<f64>| m.map(|v| Complex64::new(v, 0.0));
    let pp = cx(basis.projector(|s| s > 0.0));
    let pm = cx(basis.projector(|s| s < 0.0));
    let one = Complex64::new(1.0, 0.0);
    let mut map = Matrix3::zeros();
    let mut degenerate = false;

    if variant == Variant::Classical {
        let lrow = |k: usize| basis.left_row(k).map(|v| Complex64::new(v, 0.0));
        // east side of the upstream strip takes the u - c characteristic
        let lin = lrow(0);
        let lout = [lrow(1), lrow(2)];
        let m2 = [
            [dot(&lout[0], &(down[0].v / down[0].t)), dot(&lout[0], &(down[1].v / down[1].t))],
            [dot(&lout[1], &(down[0].v / down[0].t)), dot(&lout[1], &(down[1].v / down[1].t))],
        ];
        for col in 0..3 {
            let mut a = [Complex64::new(0.0, 0.0); 3];
            a[col] = one;
            let w2_first = down[0].v * a[1] + down[1].v * a[2];
            let w1_last = up.v * (a[0] / up.t);
            let a0 = dot(&lin, &w2_first) / dot(&lin, &up.v);
            let a12 = solve2(m2, [dot(&lout[0], &w1_last), dot(&lout[1], &w1_last)], &mut degenerate)?;
            map.set_column(col, &Vector3::new(a0, a12[0], a12[1]));
        }
        return Ok(InterfaceMap { xi, map, compatible: None, marginal: modes.marginal, degenerate });
    }

    let stab = variant.stabilization().expect("new-method variant");
    let r = correction_symbol(state, grid.beta(), grid.dy, xi, stab);
    let ep = Vector3::new(one, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let epu = Vector3::new(one, Complex64::new(state.rho_bar * state.u_bar, 0.0), Complex64::new(0.0, 0.0));
    // traces seen by the interface flux
    let g1 = (pp / up.t + pm) * up.v;
    let g2 = [(pm + pp / down[0].t) * down[0].v, (pm + pp / down[1].t) * down[1].v];
    let corr = [[dot(&r, &g2[0]), dot(&r, &g2[1])], [dot(&epu, &g2[0]), dot(&epu, &g2[1])]];
    let upd = [[dot(&ep, &g2[0]), dot(&ep, &g2[1])], [dot(&epu, &g2[0]), dot(&epu, &g2[1])]];
    for col in 0..3 {
        let mut a = [Complex64::new(0.0, 0.0); 3];
        a[col] = one;
        let gl = g1 * a[0];
        let gr = g2[0] * a[1] + g2[1] * a[2];
        let gamma = -0.5 * (dot(&r, &gr) - dot(&r, &gl));
        let t1 = -gamma / dot(&r, &g1);
        let t23 = solve2(corr, [gamma, Complex64::new(0.0, 0.0)], &mut degenerate)?;
        let tgl = g1 * t1;
        let tgr = g2[0] * t23[0] + g2[1] * t23[1];
        let delta = 0.5 * (dot(&ep, &tgl) + dot(&ep, &tgr));
        let a0 = (dot(&ep, &gl) + delta) / dot(&ep, &g1);
        let q = match ordering {
            Ordering::GaussSeidel => dot(&epu, &(g1 * a0)),
            Ordering::Jacobi => dot(&epu, &gl) + dot(&epu, &tgl),
        };
        let a12 = solve2(upd, [dot(&ep, &gr) + delta, q], &mut degenerate)?;
        map.set_column(col, &Vector3::new(a0, a12[0], a12[1]));
    }
    let phi = Vector3::new(dot(&ep, &g1), -dot(&ep, &g2[0]), -dot(&ep, &g2[1]));
    Ok(InterfaceMap { xi, map, compatible: Some(kernel_basis(&phi)), marginal: modes.marginal, degenerate })
}

pub fn discrete_convergence_rate_with(
    state: &LinearizationState,
    grid: &Grid,
    xi: f64,
    variant: Variant,
    ordering: Ordering,
) -> Result<RateReport, FourierError> {
    let m = interface_map(state, grid, xi, variant, ordering)?;
    Ok(RateReport { xi, rho: m.spectral_radius(), marginal: m.marginal, degenerate: m.degenerate })
}

/// Rate with the default left-to-right ordering of the update sweep.
pub fn discrete_convergence_rate(state: &LinearizationState, grid: &Grid, xi: f64, variant: Variant) -> Result<RateReport, FourierError> {
    discrete_convergence_rate_with(state, grid, xi, variant, Ordering::GaussSeidel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rig(mn: f64) -> (LinearizationState, Grid) {
        let dt = 100.0 * 0.05 / (mn + 1.0);
        (LinearizationState::new(1.0, mn, 0.0, 1.0, 1.0 / dt).unwrap(), Grid::new(80, 20, 4.0, 1.0, dt).unwrap())
    }

    #[test]
    fn kernel_basis_is_orthonormal_and_annihilated() {
        let phi = Vector3::new(Complex64::new(0.3, 1.0), Complex64::new(-2.0, 0.1), Complex64::new(0.0, 0.5));
        let q = kernel_basis(&phi);
        let g = q.adjoint() * q;
        assert!((g - Matrix2::identity()).norm() < 1e-13);
        for c in 0..2 {
            assert!(dot(&phi, &q.column(c).into_owned()).norm() < 1e-13);
        }
    }

    #[test]
    fn compatible_subspace_is_invariant() {
        let (s, g) = rig(0.1);
        let m = interface_map(&s, &g, 20.0, Variant::Stabilized, Ordering::GaussSeidel).unwrap();
        let q = m.compatible.unwrap();
        let img = m.map * q;
        let proj = q * (q.adjoint() * img);
        assert!((img - proj).norm() < 1e-9 * img.norm().max(1.0));
    }

    #[test]
    fn stabilization_vanishes_at_zero_wavenumber() {
        let (s, g) = rig(0.01);
        let a = correction_symbol(&s, g.beta(), g.dy, 0.0, Stabilization::None);
        let b = correction_symbol(&s, g.beta(), g.dy, 0.0, Stabilization::Laplacian);
        assert!((a - b).norm() < 1e-15);
    }
}
