use nalgebra::DMatrix;

use crate::grid::{Grid, YClosure};
use crate::states::StateField;

/// One-dimensional difference operators along `y`, acting on a column of `ny` values.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentialOps {
    /// Backward difference `(w_j - w_{j-1}) / dy`.
    pub dm: DMatrix<f64>,
    /// Forward difference `(w_{j+1} - w_j) / dy`.
    pub dp: DMatrix<f64>,
    /// `(c + v)/2 Dm - (c - v)/2 Dp`, row-wise coefficients.
    pub dmy: DMatrix<f64>,
    /// `(c + v)/2 Dm + (c - v)/2 Dp`.
    pub dpy: DMatrix<f64>,
}

impl TangentialOps {
    pub fn laplacian(&self) -> DMatrix<f64> {
        &self.dp * &self.dm
    }
}

/// Ghost values follow the grid closure: zero outside a wall, sign flip across
/// an anti-periodic seam.
pub fn semi_discrete_tangential_ops(states: &StateField, grid: &Grid) -> TangentialOps {
    let ny = grid.ny;
    let h = grid.dy;
    let wrap = match grid.closure {
        YClosure::Wall => 0.0,
        YClosure::AntiPeriodic => -1.0,
    };
    let mut dm = DMatrix::zeros(ny, ny);
    let mut dp = DMatrix::zeros(ny, ny);
    for j in 0..ny {
        dm[(j, j)] += 1.0 / h;
        dp[(j, j)] -= 1.0 / h;
        if j > 0 {
            dm[(j, j - 1)] -= 1.0 / h;
        } else {
            dm[(j, ny - 1)] -= wrap / h;
        }
        if j + 1 < ny {
            dp[(j, j + 1)] += 1.0 / h;
        } else {
            dp[(j, 0)] += wrap / h;
        }
    }
    let mut dmy = DMatrix::zeros(ny, ny);
    let mut dpy = DMatrix::zeros(ny, ny);
    for j in 0..ny {
        let s = states.row(j);
        let a = 0.5 * (s.c_bar + s.v_bar);
        let b = 0.5 * (s.c_bar - s.v_bar);
        for k in 0..ny {
            dmy[(j, k)] = a * dm[(j, k)] - b * dp[(j, k)];
            dpy[(j, k)] = a * dm[(j, k)] + b * dp[(j, k)];
        }
    }
    TangentialOps { dm, dp, dmy, dpy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use euler_core::LinearizationState;
    use num_complex::Complex64;

    fn setup(v: f64, ny: usize, closure: YClosure) -> (StateField, Grid) {
        let s = LinearizationState::new(1.0, 0.3, v, 1.0, 0.5).unwrap();
        let g = Grid::new(4, ny, 1.0, 1.0, 2.0).unwrap().with_closure(closure);
        (StateField::constant(s, ny).unwrap(), g)
    }

    #[test]
    fn zero_tangential_velocity_gives_scaled_laplacian() {
        for closure in [YClosure::Wall, YClosure::AntiPeriodic] {
            let (st, g) = setup(0.0, 7, closure);
            let ops = semi_discrete_tangential_ops(&st, &g);
            let expect = ops.laplacian() * (-0.5 * g.dy);
            // the wall closure breaks the identity in the last row only
            let rows = if closure == YClosure::Wall { 6 } else { 7 };
            assert_relative_eq!(ops.dmy.rows(0, rows), expect.rows(0, rows), epsilon = 1e-12);
        }
    }

    #[test]
    fn constants_are_annihilated_in_the_interior() {
        let (st, g) = setup(0.2, 6, YClosure::Wall);
        let ops = semi_discrete_tangential_ops(&st, &g);
        let one = nalgebra::DVector::from_element(6, 1.0);
        let a = &ops.dm * &one;
        let b = &ops.dp * &one;
        for j in 1..5 {
            assert!(a[j].abs() < 1e-12 && b[j].abs() < 1e-12);
        }
    }

    #[test]
    fn anti_periodic_symbols() {
        let ny = 8;
        let (st, g) = setup(0.25, ny, YClosure::AntiPeriodic);
        let ops = semi_discrete_tangential_ops(&st, &g);
        let theta = 3.0 * std::f64::consts::PI / ny as f64;
        let mode: Vec<Complex64> = (0..ny).map(|j| Complex64::from_polar(1.0, theta * j as f64)).collect();
        let em = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -theta)) / g.dy;
        let ep = (Complex64::from_polar(1.0, theta) - 1.0) / g.dy;
        let (a, b) = (0.5 * (1.0 + 0.25), 0.5 * (1.0 - 0.25));
        for (m, sym) in [(&ops.dm, em), (&ops.dp, ep), (&ops.dpy, a * em + b * ep), (&ops.dmy, a * em - b * ep)] {
            for j in 0..ny {
                let img: Complex64 = (0..ny).map(|k| mode[k] * m[(j, k)]).sum();
                assert!((img - sym * mode[j]).norm() < 1e-10, "row {j}");
            }
        }
    }
}
