use crate::error::CoreError;

/// Frozen background flow around which the equations are linearized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizationState {
    pub rho_bar: f64,
    pub u_bar: f64,
    pub v_bar: f64,
    pub c_bar: f64,
    /// Inverse time step `1/dt`.
    pub beta: f64,
}

impl LinearizationState {
    /// Validated constructor for a subsonic state.
    pub fn new(rho_bar: f64, u_bar: f64, v_bar: f64, c_bar: f64, beta: f64) -> Result<Self, CoreError> {
        let s = Self { rho_bar, u_bar, v_bar, c_bar, beta };
        s.validate()?;
        Ok(s)
    }

    /// Constructor for the analysis setting, which also needs `0 < u < c`.
    pub fn new_analysis(rho_bar: f64, u_bar: f64, v_bar: f64, c_bar: f64, beta: f64) -> Result<Self, CoreError> {
        let s = Self::new(rho_bar, u_bar, v_bar, c_bar, beta)?;
        s.require_outflow()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        for (name, x) in [
            ("rho_bar", self.rho_bar),
            ("u_bar", self.u_bar),
            ("v_bar", self.v_bar),
            ("c_bar", self.c_bar),
            ("beta", self.beta),
        ] {
            if !x.is_finite() {
                return Err(CoreError::NonFinite(name));
            }
        }
        if self.rho_bar <= 0.0 {
            return Err(CoreError::NonPositiveDensity(self.rho_bar));
        }
        if self.c_bar <= 0.0 {
            return Err(CoreError::NonPositiveSoundSpeed(self.c_bar));
        }
        if self.beta <= 0.0 {
            return Err(CoreError::NonPositiveBeta(self.beta));
        }
        let speed = self.speed();
        if speed >= self.c_bar {
            return Err(CoreError::NotSubsonic { speed, c: self.c_bar });
        }
        Ok(())
    }

    pub fn require_outflow(&self) -> Result<(), CoreError> {
        if !(self.u_bar > 0.0 && self.u_bar < self.c_bar) {
            return Err(CoreError::NotOutflow { u: self.u_bar, c: self.c_bar });
        }
        Ok(())
    }

    pub fn speed(&self) -> f64 {
        self.u_bar.hypot(self.v_bar)
    }

    /// Normal Mach number `u/c`.
    pub fn mach_normal(&self) -> f64 {
        self.u_bar / self.c_bar
    }

    /// Tangential Mach number `v/c`.
    pub fn mach_tangential(&self) -> f64 {
        self.v_bar / self.c_bar
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    /// Arithmetic mean of two states, used for edge fluxes between cells
    /// with different frozen states.
    pub fn mean(&self, other: &Self) -> Self {
        Self {
            rho_bar: 0.5 * (self.rho_bar + other.rho_bar),
            u_bar: 0.5 * (self.u_bar + other.u_bar),
            v_bar: 0.5 * (self.v_bar + other.v_bar),
            c_bar: 0.5 * (self.c_bar + other.c_bar),
            beta: 0.5 * (self.beta + other.beta),
        }
    }
}

/// A background state written in the frame of an interface with unit normal `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFrameState {
    pub rho_bar: f64,
    pub u_n: f64,
    pub u_tau: f64,
    pub c_bar: f64,
    pub beta: f64,
    pub normal: [f64; 2],
}

impl NormalFrameState {
    /// The same state expressed with the rotated velocity as if `n = (1, 0)`.
    pub fn as_state(&self) -> LinearizationState {
        LinearizationState {
            rho_bar: self.rho_bar,
            u_bar: self.u_n,
            v_bar: self.u_tau,
            c_bar: self.c_bar,
            beta: self.beta,
        }
    }
}

pub(crate) fn check_normal(normal: [f64; 2]) -> Result<(), CoreError> {
    let len = normal[0].hypot(normal[1]);
    if !len.is_finite() || (len - 1.0).abs() > 1e-12 {
        return Err(CoreError::NonUnitNormal(len));
    }
    Ok(())
}

/// Express the background velocity in the `(normal, tangent)` frame.
pub fn rotate_to_normal(state: &LinearizationState, normal: [f64; 2]) -> Result<NormalFrameState, CoreError> {
    check_normal(normal)?;
    let [nx, ny] = normal;
    Ok(NormalFrameState {
        rho_bar: state.rho_bar,
        u_n: state.u_bar * nx + state.v_bar * ny,
        u_tau: -state.u_bar * ny + state.v_bar * nx,
        c_bar: state.c_bar,
        beta: state.beta,
        normal,
    })
}
