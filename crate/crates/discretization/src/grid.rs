use crate::error::DiscError;

/// How the top and bottom rows of cells are closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YClosure {
    /// Characteristic ghost state `W = 0` outside the domain.
    Wall,
    /// `W(j + ny) = -W(j)`; with even `ny` this keeps only wavenumbers
    /// `(2k + 1) pi / (ny dy)`.
    AntiPeriodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub origin: [f64; 2],
    pub dt: f64,
    pub closure: YClosure,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64, dt: f64) -> Result<Self, DiscError> {
        if nx < 2 || ny < 1 {
            return Err(DiscError::Grid(format!("need nx >= 2 and ny >= 1, got {nx} x {ny}")));
        }
        if !(lx > 0.0 && ly > 0.0 && dt > 0.0) {
            return Err(DiscError::Grid(format!("extents and dt must be positive (lx={lx}, ly={ly}, dt={dt})")));
        }
        Ok(Self { nx, ny, dx: lx / nx as f64, dy: ly / ny as f64, origin: [0.0, 0.0], dt, closure: YClosure::Wall })
    }

    pub fn with_closure(self, closure: YClosure) -> Self {
        Self { closure, ..self }
    }

    pub fn with_dt(self, dt: f64) -> Self {
        Self { dt, ..self }
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.dt
    }

    /// `dx / (c dt)`
    pub fn dbar_x(&self, c: f64) -> f64 {
        self.dx / (c * self.dt)
    }

    /// `dy / (c dt)`
    pub fn dbar_y(&self, c: f64) -> f64 {
        self.dy / (c * self.dt)
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + (i as f64 + 0.5) * self.dx, self.origin[1] + (j as f64 + 0.5) * self.dy]
    }

    pub fn lx(&self) -> f64 {
        self.dx * self.nx as f64
    }

    pub fn ly(&self) -> f64 {
        self.dy * self.ny as f64
    }
}
