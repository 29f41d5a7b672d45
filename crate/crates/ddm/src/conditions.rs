use discrete_fourier::Stabilization;
use discretization::{semi_discrete_tangential_ops, Grid, StateField};
use nalgebra::{DMatrix, DVector};

/// Interface conditions as `ny x 3ny` operators on a trace block `(P, U, V)_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceOps {
    /// `P`
    pub p: DMatrix<f64>,
    /// `P + rho u U`
    pub pu: DMatrix<f64>,
    /// Correction flux condition
    /// `(beta + D_u) U - (u / c) D_py V [+ u dy / (rho c) D+ D- P]`.
    pub r: DMatrix<f64>,
}

fn component(ny: usize, k: usize) -> DMatrix<f64> {
    let mut e = DMatrix::zeros(ny, 3 * ny);
    for j in 0..ny {
        e[(j, 3 * j + k)] = 1.0;
    }
    e
}

impl InterfaceOps {
    pub fn new(grid: &Grid, states: &StateField, stab: Stabilization) -> Self {
        let ny = grid.ny;
        let t = semi_discrete_tangential_ops(states, grid);
        let (p, u, v) = (component(ny, 0), component(ny, 1), component(ny, 2));
        let rows = states.rows();
        let diag = |f: &dyn Fn(usize) -> f64| DMatrix::from_diagonal(&DVector::from_fn(ny, |j, _| f(j)));
        let rho_u = diag(&|j| rows[j].rho_bar * rows[j].u_bar);
        let pu = &p + &rho_u * &u;
        let u_op = match stab {
            Stabilization::Laplacian => t.dmy.clone(),
            Stabilization::None => diag(&|j| rows[j].v_bar.max(0.0)) * &t.dm + diag(&|j| rows[j].v_bar.min(0.0)) * &t.dp,
        };
        let mut r = (DMatrix::identity(ny, ny) * grid.beta() + u_op) * &u - diag(&|j| rows[j].u_bar / rows[j].c_bar) * &t.dpy * &v;
        if stab == Stabilization::Laplacian {
            let w = diag(&|j| rows[j].u_bar * grid.dy / (rows[j].rho_bar * rows[j].c_bar));
            r += w * t.laplacian() * &p;
        }
        Self { p, pu, r }
    }

    pub fn apply(op: &DMatrix<f64>, trace: &[f64]) -> Vec<f64> {
        (op * DVector::from_column_slice(trace)).as_slice().to_vec()
    }
}
