use discretization::Grid;
use euler_core::{flux_split, LinearizationState, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::FourierError;
use crate::poly::{det_quadratic_pencil, nonzero_roots};

const ROOT_RESIDUAL: f64 = 1e-10;
const MARGINAL: f64 = 1e-8;

/// One solution `W_i = v t^i` of the discrete scheme in an infinite strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteRoot {
    pub t: Complex64,
    /// `ln(t) / dx`
    pub lambda: Complex64,
    pub v: Vector3<Complex64>,
    /// `|M(t) v| / |M(t)|`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteModeSet {
    pub xi: f64,
    pub roots: Vec<DiscreteRoot>,
    /// Indices into `roots` with `|t| > 1`: bounded as `x -> -inf`.
    pub outside: Vec<usize>,
    /// Indices with `|t| < 1`: bounded as `x -> +inf`.
    pub inside: Vec<usize>,
    /// Some root lies within `1e-8` of the unit circle.
    pub marginal: bool,
}

impl DiscreteModeSet {
    pub fn upstream(&self) -> Result<DiscreteRoot, FourierError> {
        self.check_counts()?;
        Ok(self.roots[self.outside[0]])
    }

    /// The two downstream roots, slowest decaying first.
    pub fn downstream(&self) -> Result<[DiscreteRoot; 2], FourierError> {
        self.check_counts()?;
        let mut d = [self.roots[self.inside[0]], self.roots[self.inside[1]]];
        if d[0].t.norm() < d[1].t.norm() {
            d.swap(0, 1);
        }
        Ok(d)
    }

    fn check_counts(&self) -> Result<(), FourierError> {
        if self.outside.len() != 1 || self.inside.len() != 2 {
            return Err(FourierError::ModeCount { outside: self.outside.len(), inside: self.inside.len() });
        }
        Ok(())
    }
}

/// The three coefficient matrices of `t * (beta + (|A1| + A1- t - A1+ / t)/dx + Y(xi))`.
pub fn pencil(state: &LinearizationState, grid: &Grid, xi: f64) -> Result<[Matrix3<Complex64>; 3], FourierError> {
    let x = flux_split(state, [1.0, 0.0])?;
    let y = flux_split(state, [0.0, 1.0])?;
    let e = Complex64::from_polar(1.0, xi * grid.dy);
    let cx = |m: &Matrix3<f64>, s: f64| m.map(|v| Complex64::new(v * s, 0.0));
    let (hx, hy) = (1.0 / grid.dx, 1.0 / grid.dy);
    let yterm = cx(&y.a_abs, hy) + cx(&y.a_minus, hy) * e - cx(&y.a_plus, hy) / e;
    let c2 = cx(&x.a_minus, hx);
    let c1 = Matrix3::identity() * Complex64::new(grid.beta(), 0.0) + cx(&x.a_abs, hx) + yterm;
    let c0 = cx(&x.a_plus, -hx);
    Ok([c0, c1, c2])
}

fn null_vector(m: &Matrix3<Complex64>) -> (Vector3<Complex64>, f64) {
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let s = svd.singular_values;
    let (k, _) = s.iter().enumerate().fold((0, f64::INFINITY), |b, (k, &x)| if x < b.1 { (k, x) } else { b });
    let smax = s.iter().fold(0.0f64, |a, &x| a.max(x));
    let v: Vector3<Complex64> = vt.row(k).adjoint();
    let res = (m * v).norm() / smax.max(f64::MIN_POSITIVE);
    (v, res)
}

/// Newton steps on `det M(t)` written as `t -= 1 / tr(M^-1 M')`, which avoids
/// the cancellation of evaluating the expanded polynomial near clustered roots.
fn polish(c0: &Matrix3<Complex64>, c1: &Matrix3<Complex64>, c2: &Matrix3<Complex64>, t0: Complex64) -> Complex64 {
    let mut t = t0;
    for _ in 0..4 {
        let m = c0 + c1 * t + c2 * t * t;
        let dm = c1 + c2 * (t * 2.0);
        let Some(x) = m.lu().solve(&dm) else { break };
        let step = 1.0 / x.trace();
        if !step.is_finite() {
            break;
        }
        t -= step;
        if step.norm() <= 1e-15 * t.norm() {
            break;
        }
    }
    if t.is_finite() {
        t
    } else {
        t0
    }
}

pub fn discrete_modes(state: &LinearizationState, grid: &Grid, xi: f64) -> Result<DiscreteModeSet, FourierError> {
    state.validate()?;
    let nyq = std::f64::consts::PI / grid.dy;
    if !(xi > -nyq && xi <= nyq * (1.0 + 1e-14)) {
        return Err(FourierError::Wavenumber { xi });
    }
    let [c0, c1, c2] = pencil(state, grid, xi)?;
    let det = det_quadratic_pencil(&c0, &c1, &c2);
    let mut roots = Vec::new();
    for t0 in nonzero_roots(&det, 1e-13)? {
        let t = polish(&c0, &c1, &c2, t0);
        let m = c0 + c1 * t + c2 * t * t;
        let (v, residual) = null_vector(&m);
        if residual > ROOT_RESIDUAL {
            continue;
        }
        roots.push(DiscreteRoot { t, lambda: t.ln() / grid.dx, v, residual });
    }
    let outside = (0..roots.len()).filter(|&k| roots[k].t.norm() > 1.0).collect();
    let inside = (0..roots.len()).filter(|&k| roots[k].t.norm() < 1.0).collect();
    let marginal = roots.iter().any(|r| (r.t.norm() - 1.0).abs() < MARGINAL);
    Ok(DiscreteModeSet { xi, roots, outside, inside, marginal })
}

/// `|M(t) v| / |M(t)|` recomputed from scratch for an emitted root.
pub fn pencil_residual(state: &LinearizationState, grid: &Grid, xi: f64, root: &DiscreteRoot) -> f64 {
    match pencil(state, grid, xi) {
        Ok([c0, c1, c2]) => {
            let m = c0 + c1 * root.t + c2 * root.t * root.t;
            (m * root.v).norm() / m.norm().max(f64::MIN_POSITIVE)
        }
        Err(_) => f64::INFINITY,
    }
}
