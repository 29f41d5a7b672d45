use std::f64::consts::PI;

use discrete_fourier::{
    discrete_convergence_rate, discrete_modes, pencil_residual, rate_curve, sample_wavenumbers, Variant,
};
use discretization::Grid;
use euler_core::LinearizationState;
use proptest::prelude::*;
use symbol_analysis::lambda_roots;

const TABLE_MACH: [f64; 10] = [0.001, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];

/// 80x20 cells on [0,4]x[0,1], CFL 100.
fn rig(mn: f64, mt: f64) -> (LinearizationState, Grid) {
    let dt = 100.0 * 0.05 / ((mn * mn + mt * mt).sqrt() + 1.0);
    (LinearizationState::new(1.0, mn, mt, 1.0, 1.0 / dt).unwrap(), Grid::new(80, 20, 4.0, 1.0, dt).unwrap())
}

#[test]
fn one_upstream_mode_over_the_mach_sweep() {
    for mn in TABLE_MACH {
        for mt in [0.0, 0.1, 0.2] {
            let (s, g) = rig(mn, mt);
            for xi in sample_wavenumbers(g.dy, 40) {
                let m = discrete_modes(&s, &g, xi).unwrap();
                assert_eq!((m.outside.len(), m.inside.len()), (1, 2), "mn {mn} mt {mt} xi {xi}");
                for r in &m.roots {
                    assert!(pencil_residual(&s, &g, xi, r) <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn discrete_roots_approach_continuous_ones() {
    let s = LinearizationState::new(1.0, 0.5, 0.1, 1.0, 1.0).unwrap();
    let xi = 0.3;
    let cont = lambda_roots(&s, xi).unwrap().all();
    for h in [0.02, 0.01, 0.005] {
        let g = Grid::new(10, 10, 10.0 * h, 10.0 * h, 1.0).unwrap();
        let m = discrete_modes(&s, &g, xi).unwrap();
        for lc in cont {
            let best = m.roots.iter().map(|r| (r.lambda - lc).norm() / lc.norm()).fold(f64::INFINITY, f64::min);
            assert!(best <= 5.0 * h * s.beta / s.c_bar, "h {h}: {best}");
        }
    }
}

#[test]
fn stabilized_rate_below_one_for_table_states() {
    for mn in TABLE_MACH {
        let (s, g) = rig(mn, 0.0);
        let c = rate_curve(&s, &g, Variant::Stabilized, 200).unwrap();
        assert!(c.max_rho() < 1.0, "mn {mn}: {}", c.max_rho());
    }
}

#[test]
fn unstabilized_rate_exceeds_one_at_low_mach() {
    for mn in [0.001, 0.01, 0.1] {
        let (s, g) = rig(mn, 0.0);
        let c = rate_curve(&s, &g, Variant::Unstabilized, 200).unwrap();
        let nyq = PI / g.dy;
        assert!(c.points.iter().any(|p| p.xi >= 0.5 * nyq && p.rho > 1.0), "mn {mn}");
    }
}

#[test]
fn variants_agree_at_vanishing_wavenumber() {
    for mn in [0.001, 0.1, 0.5] {
        let (s, g) = rig(mn, 0.0);
        let a = discrete_convergence_rate(&s, &g, 1e-7, Variant::Stabilized).unwrap().rho;
        let b = discrete_convergence_rate(&s, &g, 1e-7, Variant::Unstabilized).unwrap().rho;
        assert!((a - b).abs() <= 1e-6, "mn {mn}: {a} vs {b}");
    }
}

#[test]
fn curve_resolution() {
    for mn in [0.001, 0.1, 0.5] {
        let (s, g) = rig(mn, 0.0);
        let a = rate_curve(&s, &g, Variant::Stabilized, 200).unwrap().max_rho();
        let b = rate_curve(&s, &g, Variant::Stabilized, 400).unwrap().max_rho();
        assert!((a - b).abs() <= 0.01 * b, "mn {mn}: {a} vs {b}");
    }
}

#[test]
fn stabilized_rate_vanishes_under_refinement() {
    let xi = 2.0 * PI;
    let mut last = f64::INFINITY;
    for n in [20usize, 80, 320] {
        let h = 1.0 / n as f64;
        let dt = 100.0 * h / 1.1;
        let s = LinearizationState::new(1.0, 0.1, 0.0, 1.0, 1.0 / dt).unwrap();
        let g = Grid::new(4 * n, n, 4.0, 1.0, dt).unwrap();
        assert!(xi * g.dy <= 0.5);
        last = discrete_convergence_rate(&s, &g, xi, Variant::Stabilized).unwrap().rho;
    }
    assert!(last <= 0.2, "finest rate {last}");
}

#[test]
fn curves_do_not_depend_on_thread_count() {
    let (s, g) = rig(0.1, 0.1);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| rate_curve(&s, &g, Variant::Stabilized, 200).unwrap())
    };
    let a = run(1);
    let b = run(3);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_root_has_a_small_residual(mn in 0.01f64..0.9, mt in -0.3f64..0.3, frac in 0.001f64..1.0, cfl in 1.0f64..200.0) {
        prop_assume!(mn * mn + mt * mt < 0.95);
        let dt = cfl * 0.05 / ((mn * mn + mt * mt).sqrt() + 1.0);
        let s = LinearizationState::new(1.0, mn, mt, 1.0, 1.0 / dt).unwrap();
        let g = Grid::new(80, 20, 4.0, 1.0, dt).unwrap();
        let xi = frac * PI / g.dy;
        let m = discrete_modes(&s, &g, xi).unwrap();
        prop_assert_eq!((m.outside.len(), m.inside.len()), (1, 2));
        for r in &m.roots {
            prop_assert!(pencil_residual(&s, &g, xi, r) <= 1e-10);
        }
    }
}
