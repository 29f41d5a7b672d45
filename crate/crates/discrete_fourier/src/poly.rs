use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::error::FourierError;

/// Coefficients, lowest degree first.
pub type Poly = Vec<Complex64>;

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_scaled(acc: &mut Poly, p: &[Complex64], s: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Complex64::new(0.0, 0.0));
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x * s;
    }
}

pub fn eval(p: &[Complex64], t: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
}

fn derivative(p: &[Complex64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// `det(C0 + C1 t + C2 t^2)` expanded by cofactors, degree at most 6.
pub fn det_quadratic_pencil(c0: &Matrix3<Complex64>, c1: &Matrix3<Complex64>, c2: &Matrix3<Complex64>) -> Poly {
    let entry = |a: usize, b: usize| vec![c0[(a, b)], c1[(a, b)], c2[(a, b)]];
    let perms: [([usize; 3], f64); 6] =
        [([0, 1, 2], 1.0), ([1, 2, 0], 1.0), ([2, 0, 1], 1.0), ([0, 2, 1], -1.0), ([2, 1, 0], -1.0), ([1, 0, 2], -1.0)];
    let mut det = Vec::new();
    for (p, s) in perms {
        let term = mul(&mul(&entry(0, p[0]), &entry(1, p[1])), &entry(2, p[2]));
        add_scaled(&mut det, &term, s);
    }
    det
}

/// Nonzero roots of `p`. Leading and trailing coefficients below `rel_tol`
/// times the largest one are treated as zero; the remaining roots come from
/// the companion matrix and are polished by Newton steps.
pub fn nonzero_roots(p: &[Complex64], rel_tol: f64) -> Result<Vec<Complex64>, FourierError> {
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let lo = p.iter().position(|c| c.norm() > rel_tol * scale).unwrap_or(0);
    let hi = p.iter().rposition(|c| c.norm() > rel_tol * scale).unwrap_or(0);
    let q = &p[lo..=hi];
    let d = q.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = q[d];
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for k in 0..d {
        comp[(0, k)] = -q[d - 1 - k] / lead;
        if k + 1 < d {
            comp[(k + 1, k)] = Complex64::new(1.0, 0.0);
        }
    }
    let eig = comp.schur().eigenvalues().ok_or(FourierError::Roots)?;
    let dq = derivative(q);
    Ok(eig
        .iter()
        .map(|&t0| {
            let mut t = t0;
            for _ in 0..3 {
                let dv = eval(&dq, t);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = eval(q, t) / dv;
                if !step.is_finite() {
                    break;
                }
                t -= step;
            }
            if t.is_finite() {
                t
            } else {
                t0
            }
        })
        .collect())
}
