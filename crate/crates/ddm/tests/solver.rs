use ddm::*;
use discrete_fourier::{discrete_convergence_rate, Variant};
use discretization::{assemble_interior, local_solve, PrimitiveField, YClosure};
use proptest::prelude::*;

const NEW_JACOBI: Method = Method::New { stabilization: Stabilization::Laplacian, ordering: Ordering::Jacobi };

fn rig(mn: f64, closure: YClosure) -> Rig {
    make_variable_state(Profile::Constant { mn, mt: 0.0 }, &RigSpec { closure, ..Default::default() }).unwrap()
}

fn small_rig(mn: f64, mt: f64, closure: YClosure) -> Rig {
    let spec = RigSpec { nx: 24, ny: 8, lx: 3.0, ly: 1.0, cfl: 10.0, closure };
    make_variable_state(Profile::Constant { mn, mt }, &spec).unwrap()
}

/// Runs from a random compatible guess until the error against the
/// monolithic solution of a random source problem drops below 1e-10.
fn multi_domain_error(r: &Rig, method: Method, strips: usize) -> f64 {
    let (nx, ny) = (r.grid.nx, r.grid.ny);
    let f = random_field(nx, ny, 99);
    let exact = local_solve(&assemble_interior(&r.grid, &r.states).unwrap(), &f).unwrap();
    let d = Decomposition::uniform(nx, strips).unwrap();
    let s = DdmSolver::new(method, r, &d).unwrap();
    let init = Iterate::compatible_from_field(random_field(nx, ny, 5), &d);
    let e0 = init.field.max_abs_diff(&exact);
    let cfg = RunConfig { tol: 1e-10 / e0, max_iter: 400, ..Default::default() };
    let log = run_from(&s, init, Some(&f), Some(&exact), &cfg).unwrap();
    assert!(log.converged, "{} with {strips} strips did not converge: {:?}", log.method, log.errors.last());
    log.final_iterate.field.max_abs_diff(&exact)
}

#[test]
fn zero_error_is_a_fixed_point() {
    let r = small_rig(0.3, 0.1, YClosure::Wall);
    let d = Decomposition::uniform(24, 3).unwrap();
    for m in [Method::Classical, Method::NEW_DEFAULT, NEW_JACOBI] {
        let s = DdmSolver::new(m, &r, &d).unwrap();
        let it = Iterate::compatible_from_field(PrimitiveField::zeros(24, 8), &d);
        let next = s.iterate(&it, None).unwrap();
        assert_eq!(next.field.max_abs(), 0.0);
        assert_eq!(next.pressure_gap(), 0.0);
    }
}

#[test]
fn converged_iterate_is_a_fixed_point() {
    let r = small_rig(0.4, 0.0, YClosure::AntiPeriodic);
    let f = random_field(24, 8, 1);
    let exact = local_solve(&assemble_interior(&r.grid, &r.states).unwrap(), &f).unwrap();
    let d = Decomposition::uniform(24, 2).unwrap();
    for m in [Method::Classical, Method::NEW_DEFAULT] {
        let s = DdmSolver::new(m, &r, &d).unwrap();
        let init = Iterate::compatible_from_field(random_field(24, 8, 2), &d);
        let cfg = RunConfig { tol: 1e-14, max_iter: 400, ..Default::default() };
        let log = run_from(&s, init, Some(&f), Some(&exact), &cfg).unwrap();
        let it = log.final_iterate;
        let next = s.iterate(&it, Some(&f)).unwrap();
        assert!(next.field.max_abs_diff(&exact) < 1e-12, "{}", m.label());
        assert!(next.field.max_abs_diff(&it.field) < 1e-12, "{}", m.label());
    }
}

#[test]
fn single_strip_converges_in_one_solve() {
    let r = small_rig(0.2, 0.0, YClosure::Wall);
    let f = random_field(24, 8, 3);
    let exact = local_solve(&assemble_interior(&r.grid, &r.states).unwrap(), &f).unwrap();
    let d = Decomposition::uniform(24, 1).unwrap();
    let s = DdmSolver::new(Method::Classical, &r, &d).unwrap();
    let init = Iterate::compatible_from_field(random_field(24, 8, 4), &d);
    let log = run_from(&s, init, Some(&f), Some(&exact), &RunConfig::default()).unwrap();
    assert!(log.converged);
    assert_eq!(log.solve_count(), 1);
    assert!(log.final_iterate.field.max_abs_diff(&exact) < 1e-12);
}

#[test]
fn solve_count_is_iterations_times_solves_per_iteration() {
    let r = small_rig(0.5, 0.0, YClosure::AntiPeriodic);
    let d = Decomposition::uniform(24, 3).unwrap();
    for m in [Method::Classical, Method::NEW_DEFAULT] {
        let s = DdmSolver::new(m, &r, &d).unwrap();
        let log = run_to_convergence(&s, &RunConfig { max_iter: 7, tol: 1e-300, ..Default::default() }).unwrap();
        assert_eq!(log.iterations(), 7);
        assert_eq!(log.solve_count(), 7 * m.solves_per_iteration());
        for (k, n) in log.solves.iter().enumerate() {
            assert_eq!(*n, (k + 1) * m.solves_per_iteration());
        }
        assert!(log.wall_time.windows(2).all(|w| w[1] >= w[0]));
    }
}

#[test]
fn classical_matches_monolithic_on_walls() {
    let r = rig(0.3, YClosure::Wall);
    for strips in [2, 3] {
        assert!(multi_domain_error(&r, Method::Classical, strips) <= 1e-8);
    }
}

#[test]
fn both_methods_match_monolithic_with_anti_periodic_closure() {
    let r = rig(0.3, YClosure::AntiPeriodic);
    for strips in [2, 3] {
        for m in [Method::Classical, Method::NEW_DEFAULT] {
            let e = multi_domain_error(&r, m, strips);
            assert!(e <= 1e-8, "{} with {strips} strips: {e:e}", m.label());
        }
    }
}

#[test]
fn incompatible_initial_traces_are_rejected() {
    let r = small_rig(0.3, 0.0, YClosure::AntiPeriodic);
    let d = Decomposition::uniform(24, 2).unwrap();
    let s = DdmSolver::new(Method::NEW_DEFAULT, &r, &d).unwrap();
    let mut init = Iterate::compatible_from_field(random_field(24, 8, 1), &d);
    init.left[0][0] += 0.5;
    assert!(matches!(run_from(&s, init, None, None, &RunConfig::default()), Err(DdmError::Incompatible { .. })));
}

#[test]
fn backflow_interface_is_rejected() {
    let r = small_rig(-0.3, 0.0, YClosure::Wall);
    let d = Decomposition::uniform(24, 2).unwrap();
    assert!(DdmSolver::new(Method::Classical, &r, &d).is_err());
}

/// Per-iteration reduction of a single tangential mode against the Fourier rate.
fn single_mode_reduction(mn: f64, k: usize) -> (f64, f64, Vec<f64>) {
    let r = rig(mn, YClosure::AntiPeriodic);
    let d = Decomposition::uniform(80, 2).unwrap();
    let s = DdmSolver::new(Method::NEW_DEFAULT, &r, &d).unwrap();
    let theta = (2 * k + 1) as f64 * std::f64::consts::PI / 20.0;
    let rho = discrete_convergence_rate(r.states.row(0), &r.grid, theta / r.grid.dy, Variant::Stabilized).unwrap().rho;
    let init = Iterate::compatible_from_field(single_mode_field(80, 20, theta, 11), &d);
    let log = run_from(&s, init, None, None, &RunConfig { max_iter: 5, tol: 0.0, ..Default::default() }).unwrap();
    let observed = (log.errors[5] / log.errors[1]).powf(0.25);
    (rho, observed, log.errors)
}

#[test]
fn single_mode_reduction_matches_fourier_rate() {
    for (mn, k) in [(0.1, 2), (0.5, 5), (0.8, 9)] {
        let (rho, observed, _) = single_mode_reduction(mn, k);
        assert!((observed - rho).abs() <= 0.1 * rho, "mn {mn} k {k}: observed {observed}, rate {rho}");
    }
}

#[test]
fn two_iterations_after_the_first_contract_by_rate_squared() {
    for (mn, k) in [(0.1, 0), (0.8, 2)] {
        let (rho, _, e) = single_mode_reduction(mn, k);
        assert!(e[3] <= 1.05 * (rho * rho).max(1e-10) * e[1], "mn {mn}: {e:?}");
    }
}

#[test]
fn converged_runs_reduce_on_average() {
    let r = rig(0.5, YClosure::AntiPeriodic);
    for strips in [2, 3] {
        let d = Decomposition::uniform(80, strips).unwrap();
        for m in [Method::Classical, Method::NEW_DEFAULT] {
            let log = run_to_convergence(&DdmSolver::new(m, &r, &d).unwrap(), &RunConfig::default()).unwrap();
            assert!(log.converged && log.mean_reduction() < 1.0);
        }
    }
}

#[test]
fn runs_are_reproducible() {
    let r = rig(0.1, YClosure::AntiPeriodic);
    let d = Decomposition::uniform(80, 3).unwrap();
    let s = DdmSolver::new(Method::NEW_DEFAULT, &r, &d).unwrap();
    let a = run_to_convergence(&s, &RunConfig::default()).unwrap();
    let b = run_to_convergence(&s, &RunConfig::default()).unwrap();
    assert_eq!(a.errors, b.errors);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = one.install(|| run_to_convergence(&s, &RunConfig::default()).unwrap());
    assert_eq!(a.errors, c.errors);
}

#[test]
fn unstabilized_variant_fails_at_low_mach() {
    let r = rig(0.001, YClosure::AntiPeriodic);
    let d = Decomposition::uniform(80, 2).unwrap();
    let m = Method::New { stabilization: Stabilization::None, ordering: Ordering::GaussSeidel };
    let bad = run_to_convergence(&DdmSolver::new(m, &r, &d).unwrap(), &RunConfig::default()).unwrap();
    let good = run_to_convergence(&DdmSolver::new(Method::NEW_DEFAULT, &r, &d).unwrap(), &RunConfig::default()).unwrap();
    assert!(good.converged);
    assert!(bad.diverged || !bad.converged || bad.solve_count() > 2 * good.solve_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn compatible_guess_has_matching_pressures(seed in any::<u64>(), strips in 2usize..5) {
        let d = Decomposition::uniform(24, strips).unwrap();
        let it = Iterate::compatible_from_field(random_field(24, 8, seed), &d);
        prop_assert_eq!(it.pressure_gap(), 0.0);
        prop_assert!(it.field.data.iter().all(|x| x.abs() <= 1.0));
    }

    #[test]
    fn iterates_stay_finite(seed in any::<u64>(), mn in 0.05f64..0.9, mt in -0.3f64..0.3) {
        let r = small_rig(mn, mt, YClosure::AntiPeriodic);
        let d = Decomposition::uniform(24, 3).unwrap();
        let s = DdmSolver::new(Method::NEW_DEFAULT, &r, &d).unwrap();
        let it = Iterate::compatible_from_field(random_field(24, 8, seed), &d);
        let (next, data) = s.new_ddm_iterate(&it, None).unwrap();
        prop_assert!(next.field.is_finite());
        prop_assert_eq!(data.len(), 2);
        for x in &data {
            prop_assert_eq!(x.gamma.len(), 8);
            prop_assert!(x.gamma.iter().chain(&x.delta).chain(&x.q_left).all(|v| v.is_finite()));
        }
    }
}
