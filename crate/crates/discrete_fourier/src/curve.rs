use std::f64::consts::PI;

use discretization::Grid;
use euler_core::LinearizationState;
use rayon::prelude::*;

use crate::error::FourierError;
use crate::rate::{discrete_convergence_rate_with, Ordering, RateReport, Variant};

/// Lowest sampled wavenumber as a fraction of the Nyquist wavenumber `pi / dy`.
pub const LOWEST_FRACTION: f64 = 1e-3;

const LIMIT_OFFSET: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct RateCurve {
    pub variant: Variant,
    pub points: Vec<RateReport>,
}

impl RateCurve {
    pub fn max_rho(&self) -> f64 {
        self.points.iter().fold(0.0, |m, p| m.max(p.rho))
    }

    pub fn any_marginal(&self) -> bool {
        self.points.iter().any(|p| p.marginal)
    }
}

/// `n` log-spaced wavenumbers in `[1e-3 pi/dy, pi/dy)` followed by `pi/dy`.
pub fn sample_wavenumbers(dy: f64, n: usize) -> Vec<f64> {
    let nyq = PI / dy;
    let lo = (LOWEST_FRACTION * nyq).ln();
    let hi = nyq.ln();
    let mut xs: Vec<f64> = (0..n).map(|k| (lo + (hi - lo) * k as f64 / n as f64).exp()).collect();
    xs.push(nyq);
    xs
}

pub fn rate_curve_with(
    state: &LinearizationState,
    grid: &Grid,
    variant: Variant,
    ordering: Ordering,
    n_samples: usize,
) -> Result<RateCurve, FourierError> {
    if n_samples < 2 {
        return Err(FourierError::Samples(n_samples));
    }
    let points = sample_wavenumbers(grid.dy, n_samples)
        .into_par_iter()
        .map(|xi| {
            let r = discrete_convergence_rate_with(state, grid, xi, variant, ordering)?;
            if !r.degenerate {
                return Ok(r);
            }
            // the decoupled mode makes the point itself singular; report the
            // one-sided limit, keeping the flag
            let near = discrete_convergence_rate_with(state, grid, xi * (1.0 - LIMIT_OFFSET), variant, ordering)?;
            Ok(RateReport { xi, rho: near.rho, marginal: r.marginal || near.marginal, degenerate: true })
        })
        .collect::<Result<Vec<_>, FourierError>>()?;
    Ok(RateCurve { variant, points })
}

pub fn rate_curve(state: &LinearizationState, grid: &Grid, variant: Variant, n_samples: usize) -> Result<RateCurve, FourierError> {
    rate_curve_with(state, grid, variant, Ordering::GaussSeidel, n_samples)
}
