use discretization::{cfl_time_step, Grid, PrimitiveField, StateField, YClosure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use euler_core::LinearizationState;

use crate::error::DdmError;

/// Background flow as a function of `y` (density and sound speed 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    Constant { mn: f64, mt: f64 },
    /// `Mt(y) = 0.1 (1 + cos(pi y))` with constant `Mn`.
    MtCos { mn: f64 },
    /// `Mn(y) = 0.5 (0.2 + 0.04 tanh(y / 0.2))` with `Mt = 0`.
    MnTanh,
}

impl Profile {
    /// `(Mn, Mt)` at height `y`.
    pub fn mach_at(&self, y: f64) -> (f64, f64) {
        match *self {
            Profile::Constant { mn, mt } => (mn, mt),
            Profile::MtCos { mn } => (mn, 0.1 * (1.0 + (std::f64::consts::PI * y).cos())),
            Profile::MnTanh => (0.5 * (0.2 + 0.04 * (y / 0.2).tanh()), 0.0),
        }
    }
}

/// Rectangle `[0, lx] x [0, ly]` with `nx x ny` cells and `dt` from a CFL number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigSpec {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub cfl: f64,
    pub closure: YClosure,
}

impl Default for RigSpec {
    fn default() -> Self {
        Self { nx: 80, ny: 20, lx: 4.0, ly: 1.0, cfl: 100.0, closure: YClosure::Wall }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rig {
    pub grid: Grid,
    pub states: StateField,
}

/// Profile evaluated at cell centres, constant in `x`, with `beta = 1/dt`.
pub fn make_variable_state(profile: Profile, spec: &RigSpec) -> Result<Rig, DdmError> {
    if spec.nx < 2 || spec.ny < 1 || !(spec.cfl > 0.0) {
        return Err(DdmError::Profile(format!("bad rig {spec:?}")));
    }
    let dy = spec.ly / spec.ny as f64;
    let dx = spec.lx / spec.nx as f64;
    let mut rows = Vec::with_capacity(spec.ny);
    for j in 0..spec.ny {
        let y = (j as f64 + 0.5) * dy;
        let (mn, mt) = profile.mach_at(y);
        let s = LinearizationState { rho_bar: 1.0, u_bar: mn, v_bar: mt, c_bar: 1.0, beta: 1.0 };
        s.validate().map_err(|e| DdmError::Profile(format!("row {j} (y = {y}): {e}")))?;
        rows.push(s);
    }
    let states = StateField::from_rows(rows)?;
    let dt = cfl_time_step(dx, dy, &states, spec.cfl);
    let grid = Grid::new(spec.nx, spec.ny, spec.lx, spec.ly, dt)?.with_closure(spec.closure);
    Ok(Rig { states: states.with_beta(grid.beta()), grid })
}

/// Field carrying the single tangential mode `theta`: `P, U` proportional to
/// `cos((j + 1/2) theta)` and `V` to `sin((j + 1/2) theta)`, with seeded
/// random amplitudes per column. With anti-periodic closure `theta` must be
/// an odd multiple of `pi / ny`.
pub fn single_mode_field(nx: usize, ny: usize, theta: f64, seed: u64) -> PrimitiveField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = PrimitiveField::zeros(nx, ny);
    for i in 0..nx {
        let a: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        for j in 0..ny {
            let (s, c) = ((j as f64 + 0.5) * theta).sin_cos();
            f.set(i, j, [a[0] * c, a[1] * c, a[2] * s]);
        }
    }
    f
}
