use euler_core::LinearizationState;

use crate::error::DiscError;

/// Background states frozen per cell row (constant along x).
#[derive(Debug, Clone, PartialEq)]
pub struct StateField {
    rows: Vec<LinearizationState>,
}

impl StateField {
    pub fn from_rows(rows: Vec<LinearizationState>) -> Result<Self, DiscError> {
        for (row, s) in rows.iter().enumerate() {
            s.validate().map_err(|source| DiscError::BadCell { row, source })?;
        }
        Ok(Self { rows })
    }

    pub fn constant(state: LinearizationState, ny: usize) -> Result<Self, DiscError> {
        Self::from_rows(vec![state; ny])
    }

    pub fn ny(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, j: usize) -> &LinearizationState {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[LinearizationState] {
        &self.rows
    }

    pub fn with_beta(&self, beta: f64) -> Self {
        Self { rows: self.rows.iter().map(|s| s.with_beta(beta)).collect() }
    }

    pub fn max_wave_speed(&self) -> f64 {
        self.rows.iter().map(|s| s.speed() + s.c_bar).fold(0.0, f64::max)
    }
}

/// `dt = cfl * min(dx, dy) / max(|V| + c)`.
pub fn cfl_time_step(dx: f64, dy: f64, states: &StateField, cfl: f64) -> f64 {
    cfl * dx.min(dy) / states.max_wave_speed()
}
