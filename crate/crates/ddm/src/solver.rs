use std::time::Instant;

use discrete_fourier::{Ordering, Stabilization};
use discretization::{incoming_characteristic_ops, OperatorBuilder, PrimitiveField, Side, StripSolution, SubdomainOperator};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conditions::InterfaceOps;
use crate::decomposition::Decomposition;
use crate::error::DdmError;
use crate::rig::Rig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Incoming characteristics taken from the neighbours' previous iterate.
    Classical,
    /// Correction solves driven by flux jumps, then update solves with
    /// averaged pressure increments.
    New { stabilization: Stabilization, ordering: Ordering },
}

impl Method {
    pub const NEW_DEFAULT: Method = Method::New { stabilization: Stabilization::Laplacian, ordering: Ordering::GaussSeidel };

    /// Local solves per subdomain per iteration.
    pub fn solves_per_iteration(&self) -> usize {
        match self {
            Method::Classical => 1,
            Method::New { .. } => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Method::Classical => "classical".into(),
            Method::New { stabilization, ordering } => {
                let s = match stabilization {
                    Stabilization::Laplacian => "laplacian",
                    Stabilization::None => "none",
                };
                let o = match ordering {
                    Ordering::GaussSeidel => "gauss-seidel",
                    Ordering::Jacobi => "jacobi",
                };
                format!("new({s}, {o})")
            }
        }
    }
}

/// Field plus, for each interface, the trace states seen from the left
/// (`left[k]`) and right (`right[k]`) strips, each `3 * ny` long.
#[derive(Debug, Clone, PartialEq)]
pub struct Iterate {
    pub field: PrimitiveField,
    pub left: Vec<Vec<f64>>,
    pub right: Vec<Vec<f64>>,
}

impl Iterate {
    /// Traces initialised from the cells next to each interface with their
    /// pressures replaced by the average, written back into the field.
    pub fn compatible_from_field(mut field: PrimitiveField, decomp: &Decomposition) -> Self {
        let ny = field.ny;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..decomp.n_interfaces() {
            let i = decomp.interface_column(k);
            for j in 0..ny {
                let mut a = field.get(i - 1, j);
                let mut b = field.get(i, j);
                let p = 0.5 * (a[0] + b[0]);
                a[0] = p;
                b[0] = p;
                field.set(i - 1, j, a);
                field.set(i, j, b);
            }
            left.push(field.column(i - 1).to_vec());
            right.push(field.column(i).to_vec());
        }
        Self { field, left, right }
    }

    /// Largest pressure gap between the two traces of any interface.
    pub fn pressure_gap(&self) -> f64 {
        let mut gap = 0.0f64;
        for (l, r) in self.left.iter().zip(&self.right) {
            for j in 0..l.len() / 3 {
                gap = gap.max((l[3 * j] - r[3 * j]).abs());
            }
        }
        gap
    }
}

/// Per-interface quantities of one new-method iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceData {
    /// Correction right-hand side.
    pub gamma: Vec<f64>,
    /// Update pressure increment.
    pub delta: Vec<f64>,
    pub p_left: Vec<f64>,
    pub p_right: Vec<f64>,
    pub un_left: Vec<f64>,
    pub un_right: Vec<f64>,
    pub ut_left: Vec<f64>,
    pub ut_right: Vec<f64>,
    /// `P + rho u U` of the updated traces.
    pub q_left: Vec<f64>,
    pub q_right: Vec<f64>,
}

fn comp(trace: &[f64], k: usize) -> Vec<f64> {
    trace.iter().skip(k).step_by(3).copied().collect()
}

fn zip_with(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

struct StripOps {
    correction: Option<SubdomainOperator>,
    update: SubdomainOperator,
}

/// Factorized local operators of every strip for one method.
pub struct DdmSolver {
    pub method: Method,
    pub decomp: Decomposition,
    pub rig: Rig,
    ops: Option<InterfaceOps>,
    strips: Vec<StripOps>,
}

impl DdmSolver {
    pub fn new(method: Method, rig: &Rig, decomp: &Decomposition) -> Result<Self, DdmError> {
        decomp.check(rig.grid.nx, &rig.states)?;
        let ns = decomp.n_strips();
        let build = |q: usize, west: Option<Vec<DMatrix<f64>>>, east: Option<Vec<DMatrix<f64>>>| -> Result<SubdomainOperator, DdmError> {
            let (i0, i1) = decomp.strip(q);
            let mut b = OperatorBuilder::new(&rig.grid, &rig.states, i0, i1)?;
            if let Some(w) = west {
                b = b.with_trace(Side::West, w)?;
            }
            if let Some(e) = east {
                b = b.with_trace(Side::East, e)?;
            }
            Ok(b.build()?)
        };
        let (ops, strips) = match method {
            Method::Classical => {
                let w = incoming_characteristic_ops(&rig.states, Side::West)?;
                let e = incoming_characteristic_ops(&rig.states, Side::East)?;
                let strips = (0..ns)
                    .into_par_iter()
                    .map(|q| {
                        let update = build(q, (q > 0).then(|| w.clone()), (q + 1 < ns).then(|| e.clone()))?;
                        Ok(StripOps { correction: None, update })
                    })
                    .collect::<Result<Vec<_>, DdmError>>()?;
                (None, strips)
            }
            Method::New { stabilization, .. } => {
                let o = InterfaceOps::new(&rig.grid, &rig.states, stabilization);
                let strips = (0..ns)
                    .into_par_iter()
                    .map(|q| {
                        let correction =
                            build(q, (q > 0).then(|| vec![o.r.clone(), o.pu.clone()]), (q + 1 < ns).then(|| vec![o.r.clone()]))?;
                        let update =
                            build(q, (q > 0).then(|| vec![o.p.clone(), o.pu.clone()]), (q + 1 < ns).then(|| vec![o.p.clone()]))?;
                        Ok(StripOps { correction: Some(correction), update })
                    })
                    .collect::<Result<Vec<_>, DdmError>>()?;
                (Some(o), strips)
            }
        };
        Ok(Self { method, decomp: decomp.clone(), rig: rig.clone(), ops, strips })
    }

    fn source<'a>(&self, f: Option<&'a PrimitiveField>, q: usize) -> &'a [f64] {
        let (i0, i1) = self.decomp.strip(q);
        f.map_or(&[], |f| f.columns(i0, i1))
    }

    /// One Jacobi sweep of the classical method.
    pub fn classical_iterate(&self, it: &Iterate, f: Option<&PrimitiveField>) -> Result<Iterate, DdmError> {
        let ns = self.decomp.n_strips();
        let w_in = incoming_characteristic_ops(&self.rig.states, Side::West)?;
        let e_in = incoming_characteristic_ops(&self.rig.states, Side::East)?;
        let sols = (0..ns)
            .into_par_iter()
            .map(|q| {
                let (i0, i1) = self.decomp.strip(q);
                let west: Vec<Vec<f64>> =
                    if q > 0 { w_in.iter().map(|op| InterfaceOps::apply(op, it.field.column(i0 - 1))).collect() } else { Vec::new() };
                let east: Vec<Vec<f64>> =
                    if q + 1 < ns { e_in.iter().map(|op| InterfaceOps::apply(op, it.field.column(i1))).collect() } else { Vec::new() };
                let wr: Vec<&[f64]> = west.iter().map(|v| v.as_slice()).collect();
                let er: Vec<&[f64]> = east.iter().map(|v| v.as_slice()).collect();
                Ok(self.strips[q].update.solve(self.source(f, q), &wr, &er)?)
            })
            .collect::<Result<Vec<StripSolution>, DdmError>>()?;
        Ok(self.assemble(it, sols))
    }

    fn assemble(&self, it: &Iterate, sols: Vec<StripSolution>) -> Iterate {
        let mut field = it.field.clone();
        let mut left = it.left.clone();
        let mut right = it.right.clone();
        for (q, s) in sols.into_iter().enumerate() {
            let (i0, i1) = self.decomp.strip(q);
            field.columns_mut(i0, i1).copy_from_slice(&s.cells);
            if let Some(w) = s.west {
                right[q - 1] = w;
            }
            if let Some(e) = s.east {
                left[q] = e;
            }
        }
        Iterate { field, left, right }
    }

    /// One correction + update cycle of the new method.
    pub fn new_ddm_iterate(&self, it: &Iterate, f: Option<&PrimitiveField>) -> Result<(Iterate, Vec<InterfaceData>), DdmError> {
        let Method::New { ordering, .. } = self.method else {
            return Err(DdmError::Decomposition("solver was built for the classical method".into()));
        };
        let o = self.ops.as_ref().expect("new-method operators");
        let ns = self.decomp.n_strips();
        let ni = self.decomp.n_interfaces();
        let gamma: Vec<Vec<f64>> = (0..ni)
            .map(|k| zip_with(&InterfaceOps::apply(&o.r, &it.right[k]), &InterfaceOps::apply(&o.r, &it.left[k]), |a, b| -0.5 * (a - b)))
            .collect();
        let zero = vec![0.0; self.rig.grid.ny];
        let corr = (0..ns)
            .into_par_iter()
            .map(|q| {
                let neg: Vec<f64>;
                let west: Vec<&[f64]> = if q > 0 { vec![&gamma[q - 1], &zero] } else { Vec::new() };
                let east: Vec<&[f64]> = if q + 1 < ns {
                    neg = gamma[q].iter().map(|g| -g).collect();
                    vec![&neg]
                } else {
                    Vec::new()
                };
                let op = self.strips[q].correction.as_ref().expect("correction operator");
                Ok(op.solve(&[], &west, &east)?)
            })
            .collect::<Result<Vec<StripSolution>, DdmError>>()?;
        let t_left: Vec<Vec<f64>> = (0..ni).map(|k| corr[k].east.clone().expect("east trace")).collect();
        let t_right: Vec<Vec<f64>> = (0..ni).map(|k| corr[k + 1].west.clone().expect("west trace")).collect();
        let delta: Vec<Vec<f64>> = (0..ni)
            .map(|k| zip_with(&InterfaceOps::apply(&o.p, &t_left[k]), &InterfaceOps::apply(&o.p, &t_right[k]), |a, b| 0.5 * (a + b)))
            .collect();
        let east_data = |q: usize| -> Vec<f64> {
            let k = q;
            zip_with(&InterfaceOps::apply(&o.p, &it.left[k]), &delta[k], |a, b| a + b)
        };
        let west_p = |q: usize| -> Vec<f64> {
            let k = q - 1;
            zip_with(&InterfaceOps::apply(&o.p, &it.right[k]), &delta[k], |a, b| a + b)
        };
        let solve_update = |q: usize, q_data: Option<Vec<f64>>| -> Result<StripSolution, DdmError> {
            let wp = if q > 0 { Some(west_p(q)) } else { None };
            let ed = if q + 1 < ns { Some(east_data(q)) } else { None };
            let mut west: Vec<&[f64]> = Vec::new();
            if let (Some(p), Some(qd)) = (&wp, &q_data) {
                west = vec![p, qd];
            }
            let east: Vec<&[f64]> = ed.as_ref().map(|e| vec![e.as_slice()]).unwrap_or_default();
            Ok(self.strips[q].update.solve(self.source(f, q), &west, &east)?)
        };
        let upd: Vec<StripSolution> = match ordering {
            Ordering::GaussSeidel => {
                let mut out: Vec<StripSolution> = Vec::with_capacity(ns);
                for q in 0..ns {
                    let qd = if q > 0 { Some(InterfaceOps::apply(&o.pu, out[q - 1].east.as_ref().expect("east trace"))) } else { None };
                    out.push(solve_update(q, qd)?);
                }
                out
            }
            Ordering::Jacobi => (0..ns)
                .into_par_iter()
                .map(|q| {
                    let qd = (q > 0).then(|| {
                        zip_with(&InterfaceOps::apply(&o.pu, &it.left[q - 1]), &InterfaceOps::apply(&o.pu, &t_left[q - 1]), |a, b| a + b)
                    });
                    solve_update(q, qd)
                })
                .collect::<Result<Vec<_>, DdmError>>()?,
        };
        let next = self.assemble(it, upd);
        let data = (0..ni)
            .map(|k| InterfaceData {
                gamma: gamma[k].clone(),
                delta: delta[k].clone(),
                p_left: comp(&next.left[k], 0),
                p_right: comp(&next.right[k], 0),
                un_left: comp(&next.left[k], 1),
                un_right: comp(&next.right[k], 1),
                ut_left: comp(&next.left[k], 2),
                ut_right: comp(&next.right[k], 2),
                q_left: InterfaceOps::apply(&o.pu, &next.left[k]),
                q_right: InterfaceOps::apply(&o.pu, &next.right[k]),
            })
            .collect();
        Ok((next, data))
    }

    pub fn iterate(&self, it: &Iterate, f: Option<&PrimitiveField>) -> Result<Iterate, DdmError> {
        match self.method {
            Method::Classical => self.classical_iterate(it, f),
            Method::New { .. } => Ok(self.new_ddm_iterate(it, f)?.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// Stop when the max-norm error falls below `tol` times its initial value.
    pub tol: f64,
    pub max_iter: usize,
    /// Flag divergence when the error grows by this factor.
    pub divergence: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tol: 1e-6, max_iter: 500, divergence: 1e6, seed: 2024 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationLog {
    pub method: String,
    /// Max-norm error, starting with the initial guess.
    pub errors: Vec<f64>,
    /// Cumulative local solves per subdomain after each iteration.
    pub solves: Vec<usize>,
    /// Seconds since the start of the run after each iteration.
    pub wall_time: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
    pub final_iterate: Iterate,
}

impl IterationLog {
    pub fn iterations(&self) -> usize {
        self.errors.len() - 1
    }

    /// Solves per subdomain, the figure reported in the benchmark tables.
    pub fn solve_count(&self) -> usize {
        self.solves.last().copied().unwrap_or(0)
    }

    /// Geometric mean of the per-iteration error ratio.
    pub fn mean_reduction(&self) -> f64 {
        let n = self.iterations();
        if n == 0 {
            return 0.0;
        }
        (self.errors[n] / self.errors[0]).powf(1.0 / n as f64)
    }
}

/// Uniform pseudo-random field in `[-1, 1]`.
pub fn random_field(nx: usize, ny: usize, seed: u64) -> PrimitiveField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..nx * ny * 3).map(|_| rng.random_range(-1.0..=1.0)).collect();
    PrimitiveField { nx, ny, data }
}

/// Runs from `initial` until the error against `reference` (zero if absent)
/// drops by `config.tol`, grows by `config.divergence`, or the cap is hit.
pub fn run_from(
    solver: &DdmSolver,
    initial: Iterate,
    source: Option<&PrimitiveField>,
    reference: Option<&PrimitiveField>,
    config: &RunConfig,
) -> Result<IterationLog, DdmError> {
    if matches!(solver.method, Method::New { .. }) {
        let gap = initial.pressure_gap();
        if gap > 1e-12 * initial.field.max_abs().max(1.0) {
            return Err(DdmError::Incompatible { interface: 0, gap });
        }
    }
    let err = |it: &Iterate| match reference {
        Some(r) => it.field.max_abs_diff(r),
        None => it.field.max_abs(),
    };
    let t0 = Instant::now();
    let s = solver.method.solves_per_iteration();
    let e0 = err(&initial);
    let mut log = IterationLog {
        method: solver.method.label(),
        errors: vec![e0],
        solves: Vec::new(),
        wall_time: Vec::new(),
        converged: e0 == 0.0,
        diverged: false,
        final_iterate: initial,
    };
    if log.converged {
        return Ok(log);
    }
    for k in 1..=config.max_iter {
        let next = solver.iterate(&log.final_iterate, source)?;
        let e = err(&next);
        log.final_iterate = next;
        log.errors.push(e);
        log.solves.push(k * s);
        log.wall_time.push(t0.elapsed().as_secs_f64());
        if e <= config.tol * e0 {
            log.converged = true;
            break;
        }
        if !e.is_finite() || e > config.divergence * e0 {
            log.diverged = true;
            break;
        }
    }
    Ok(log)
}

/// Homogeneous-error run: zero source and exact solution, seeded random
/// initial guess with averaged interface pressures.
pub fn run_to_convergence(solver: &DdmSolver, config: &RunConfig) -> Result<IterationLog, DdmError> {
    let g = &solver.rig.grid;
    let init = Iterate::compatible_from_field(random_field(g.nx, g.ny, config.seed), &solver.decomp);
    run_from(solver, init, None, None, config)
}
