use std::time::Instant;

use clap::ValueEnum;
use ddm::{make_variable_state, run_to_convergence, DdmSolver, Decomposition, IterationLog, Method, Rig};
use discrete_fourier::{discrete_modes, pencil_residual, rate_curve_with, sample_wavenumbers, RateCurve, Variant};
use euler_core::{det3, g_hat, l_hat, symbol_p_hat, Complex64, LinearizationState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use symbol_analysis::continuous_two_step_check;

use crate::config::{ExperimentConfig, MethodName, ProfileName};
use crate::error::HarnessError;
use crate::reference::{ReferenceCounts, ReferenceRow};

pub fn build_rig(cfg: &ExperimentConfig, mn: f64) -> Result<Rig, HarnessError> {
    Ok(make_variable_state(cfg.profile(mn), &cfg.rig_spec())?)
}

/// `dt` and `beta` of the rig built for `mn`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Derived {
    pub mn: f64,
    pub dt: f64,
    pub beta: f64,
}

pub fn derived(cfg: &ExperimentConfig, mn: f64) -> Result<Derived, HarnessError> {
    let r = build_rig(cfg, mn)?;
    Ok(Derived { mn, dt: r.grid.dt, beta: r.grid.beta() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Converged,
    Diverged,
    MaxIter,
}

impl RunStatus {
    pub fn of(log: &IterationLog) -> Self {
        if log.converged {
            RunStatus::Converged
        } else if log.diverged {
            RunStatus::Diverged
        } else {
            RunStatus::MaxIter
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Converged => "converged",
            RunStatus::Diverged => "diverged",
            RunStatus::MaxIter => "max-iter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub method: String,
    pub solves: usize,
    pub iterations: usize,
    pub status: RunStatus,
    pub final_reduction: f64,
    pub mean_reduction: f64,
    pub seconds: f64,
}

impl RunSummary {
    pub fn from_log(log: &IterationLog) -> Self {
        Self {
            method: log.method.clone(),
            solves: log.solve_count(),
            iterations: log.iterations(),
            status: RunStatus::of(log),
            final_reduction: log.errors.last().copied().unwrap_or(0.0) / log.errors[0].max(f64::MIN_POSITIVE),
            mean_reduction: log.mean_reduction(),
            seconds: log.wall_time.last().copied().unwrap_or(0.0),
        }
    }

    pub fn converged(&self) -> bool {
        self.status == RunStatus::Converged
    }
}

pub fn run_method(cfg: &ExperimentConfig, rig: &Rig, method: Method) -> Result<IterationLog, HarnessError> {
    let d = Decomposition::uniform(rig.grid.nx, cfg.decomposition.strips)?;
    let solver = DdmSolver::new(method, rig, &d)?;
    Ok(run_to_convergence(&solver, &cfg.run_config())?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub mn: f64,
    pub cells_per_unit: Option<usize>,
    pub classical: Option<RunSummary>,
    pub new: Option<RunSummary>,
    pub reference: Option<ReferenceRow>,
}

impl TableRow {
    pub fn converged(&self) -> bool {
        self.classical.iter().chain(&self.new).all(RunSummary::converged)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkTable {
    pub name: String,
    pub profile: ProfileName,
    pub strips: usize,
    pub grid: String,
    pub seed: u64,
    pub rows: Vec<TableRow>,
}

impl BenchmarkTable {
    /// Rows where the stabilized new method failed to converge.
    pub fn failed_new_runs(&self) -> Vec<&TableRow> {
        self.rows.iter().filter(|r| r.new.as_ref().is_some_and(|n| !n.converged())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Preset {
    /// Two strips, constant state, `Mt = 0`.
    Table1,
    /// Two strips, `Mt(y) = 0.1 (1 + cos(pi y))`.
    Table2,
    /// Three strips, constant state.
    Table3,
    /// Two strips, `h` in {1/10, 1/20, 1/40} at `Mn` in {0.001, 0.1}.
    Mesh,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Table1, Preset::Table2, Preset::Table3, Preset::Mesh];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Table1 => "table1",
            Preset::Table2 => "table2",
            Preset::Table3 => "table3",
            Preset::Mesh => "mesh",
        }
    }

    /// Base config with the preset's physics and decomposition applied.
    pub fn apply(self, base: &ExperimentConfig) -> ExperimentConfig {
        let mut c = base.clone();
        c.physics.mach = crate::config::TABLE_MACHS.to_vec();
        c.physics.mt = 0.0;
        c.physics.profile = ProfileName::Constant;
        c.decomposition.strips = 2;
        c.algorithm.method = MethodName::Both;
        match self {
            Preset::Table1 => {}
            Preset::Table2 => c.physics.profile = ProfileName::MtCos,
            Preset::Table3 => c.decomposition.strips = 3,
            Preset::Mesh => c.physics.mach = vec![0.001, 0.1],
        }
        c
    }

    /// `(config, mn, cells per unit length)` for every row.
    pub fn cells(self, base: &ExperimentConfig) -> Vec<(ExperimentConfig, f64, Option<usize>)> {
        let c = self.apply(base);
        match self {
            Preset::Mesh => {
                let mut out = Vec::new();
                for &mn in &c.physics.mach {
                    for n in [10usize, 20, 40] {
                        let mut m = c.clone();
                        m.grid.ny = (n as f64 * m.grid.ly).round() as usize;
                        m.grid.nx = (n as f64 * m.grid.lx).round() as usize;
                        out.push((m, mn, Some(n)));
                    }
                }
                out
            }
            _ => c.machs().into_iter().map(|mn| (c.clone(), mn, None)).collect(),
        }
    }
}

fn run_row(cfg: &ExperimentConfig, mn: f64, cells_per_unit: Option<usize>, reference: Option<ReferenceRow>) -> Result<TableRow, HarnessError> {
    let rig = build_rig(cfg, mn)?;
    let mut row = TableRow { mn, cells_per_unit, classical: None, new: None, reference };
    for m in cfg.methods() {
        let s = RunSummary::from_log(&run_method(cfg, &rig, m)?);
        match m {
            Method::Classical => row.classical = Some(s),
            Method::New { .. } => row.new = Some(s),
        }
    }
    Ok(row)
}

fn grid_label(cfg: &ExperimentConfig) -> String {
    format!("{}x{} on {}x{} ({:?})", cfg.grid.nx, cfg.grid.ny, cfg.grid.lx, cfg.grid.ly, cfg.grid.closure)
}

/// Both methods over `cfg.machs()`; rows keep sweep order.
pub fn sweep(cfg: &ExperimentConfig, name: &str) -> Result<BenchmarkTable, HarnessError> {
    let rows = cfg.machs().into_par_iter().map(|mn| run_row(cfg, mn, None, None)).collect::<Result<Vec<_>, _>>()?;
    Ok(BenchmarkTable {
        name: name.into(),
        profile: cfg.physics.profile,
        strips: cfg.decomposition.strips,
        grid: grid_label(cfg),
        seed: cfg.algorithm.seed,
        rows,
    })
}

pub fn preset_table(preset: Preset, base: &ExperimentConfig) -> Result<BenchmarkTable, HarnessError> {
    let refs = ReferenceCounts::load();
    let cells = preset.cells(base);
    let rows = cells
        .par_iter()
        .map(|(c, mn, n)| run_row(c, *mn, *n, refs.lookup(preset.name(), *mn, *n)))
        .collect::<Result<Vec<_>, _>>()?;
    let c = preset.apply(base);
    Ok(BenchmarkTable {
        name: preset.name().into(),
        profile: c.physics.profile,
        strips: c.decomposition.strips,
        grid: if preset == Preset::Mesh { format!("h = 1/10, 1/20, 1/40 ({:?})", c.grid.closure) } else { grid_label(&c) },
        seed: c.algorithm.seed,
        rows,
    })
}

/// State of the first row of the rig built for `mn`.
pub fn analysis_state(cfg: &ExperimentConfig, mn: f64) -> Result<(Rig, LinearizationState), HarnessError> {
    let rig = build_rig(cfg, mn)?;
    let s = *rig.states.row(0);
    Ok((rig, s))
}

pub fn rate_curves(cfg: &ExperimentConfig, mn: f64, variants: &[Variant], samples: usize) -> Result<Vec<RateCurve>, HarnessError> {
    let (rig, s) = analysis_state(cfg, mn)?;
    variants
        .iter()
        .map(|&v| Ok(rate_curve_with(&s, &rig.grid, v, cfg.algorithm.ordering.into(), samples)?))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuousPoint {
    pub xi: f64,
    pub alpha: [f64; 3],
    pub residual: f64,
}

/// Second-iterate coefficients of the continuous two-step cycle over
/// `samples` log-spaced wavenumbers in `[1e-2, 1e2] * pi / ly`.
pub fn continuous_curve(cfg: &ExperimentConfig, mn: f64, samples: usize) -> Result<Vec<ContinuousPoint>, HarnessError> {
    let (_, s) = analysis_state(cfg, mn)?;
    let base = std::f64::consts::PI / cfg.grid.ly;
    (0..samples.max(2))
        .map(|k| {
            let xi = base * 10f64.powf(-2.0 + 4.0 * k as f64 / (samples.max(2) - 1) as f64);
            let r = continuous_two_step_check(&s, xi, Complex64::new(1.0, 0.0))?;
            Ok(ContinuousPoint { xi, alpha: r.second.map(|a| a.norm()), residual: r.relative })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn random_state(rng: &mut ChaCha8Rng) -> LinearizationState {
    let c = rng.random_range(0.2..3.0);
    let mach: f64 = rng.random_range(0.01..0.95);
    let ang: f64 = rng.random_range(-1.4..1.4);
    LinearizationState::new(rng.random_range(0.2..5.0), mach * c * ang.cos(), mach * c * ang.sin(), c, rng.random_range(0.01..50.0))
        .expect("sampled state is subsonic")
}

/// Invariant suite: determinant identity, continuous two-step residuals,
/// discrete mode counts and root residuals, stabilized rates below one.
pub fn verify(cfg: &ExperimentConfig) -> Result<Vec<Check>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.algorithm.seed);
    let mut checks = Vec::new();

    let t = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let s = random_state(&mut rng);
        let xi = rng.random_range(-50.0..50.0);
        let lambda = Complex64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        let gl = g_hat(&s, xi, lambda) * l_hat(&s, xi, lambda);
        worst = worst.max((det3(&symbol_p_hat(&s, xi, lambda)) - gl).norm() / gl.norm().max(1.0));
    }
    checks.push(Check {
        name: "determinant identity".into(),
        passed: worst <= 1e-12,
        detail: format!("200 samples, worst relative mismatch {worst:.2e}, {:.3} s", t.elapsed().as_secs_f64()),
    });

    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = random_state(&mut rng);
        for k in 0..20 {
            let mag = 10f64.powf(rng.random_range(-2.0..2.0));
            let xi = if k % 2 == 0 { mag } else { -mag };
            worst = worst.max(continuous_two_step_check(&s, xi, Complex64::new(1.0, 0.0))?.relative);
        }
    }
    checks.push(Check {
        name: "continuous two-step".into(),
        passed: worst <= 1e-12,
        detail: format!("100 states x 20 wavenumbers, worst residual {worst:.2e}"),
    });

    let machs = cfg.machs();
    let mut bad_counts = Vec::new();
    let mut worst_res = 0.0f64;
    for &mn in &machs {
        for mt in [0.0, 0.1, 0.2] {
            let s = LinearizationState::new(1.0, mn, mt, 1.0, 1.0)?;
            let rig = build_rig(cfg, mn)?;
            let s = s.with_beta(rig.grid.beta());
            for xi in sample_wavenumbers(rig.grid.dy, 20) {
                let m = discrete_modes(&s, &rig.grid, xi)?;
                if m.outside.len() != 1 || m.inside.len() != 2 {
                    bad_counts.push(format!("Mn {mn} Mt {mt} xi {xi:.3}: {}/{}", m.outside.len(), m.inside.len()));
                }
                for r in &m.roots {
                    worst_res = worst_res.max(pencil_residual(&s, &rig.grid, xi, r));
                }
            }
        }
    }
    checks.push(Check {
        name: "discrete mode counts".into(),
        passed: bad_counts.is_empty(),
        detail: if bad_counts.is_empty() { format!("{} Mach x 3 Mt x 21 wavenumbers", machs.len()) } else { bad_counts.join("; ") },
    });
    checks.push(Check { name: "discrete root residuals".into(), passed: worst_res <= 1e-10, detail: format!("worst {worst_res:.2e}") });

    let mut rate_cfg = cfg.clone();
    rate_cfg.physics.mt = 0.0;
    let curves = machs
        .par_iter()
        .map(|&mn| Ok((mn, rate_curves(&rate_cfg, mn, &[Variant::Stabilized], 200)?.remove(0).max_rho())))
        .collect::<Result<Vec<_>, HarnessError>>()?;
    let over: Vec<String> = curves.iter().filter(|(_, r)| *r >= 1.0).map(|(mn, r)| format!("Mn {mn}: {r:.3}")).collect();
    let worst = curves.iter().fold(0.0f64, |m, (_, r)| m.max(*r));
    checks.push(Check {
        name: "stabilized rate below one".into(),
        passed: over.is_empty(),
        detail: if over.is_empty() { format!("max over sweep {worst:.4}") } else { over.join("; ") },
    });
    Ok(checks)
}
