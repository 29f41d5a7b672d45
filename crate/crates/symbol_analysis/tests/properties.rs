use euler_core::{Complex64, LinearizationState};
use proptest::prelude::*;
use symbol_analysis::*;

fn outflow_state() -> impl Strategy<Value = LinearizationState> {
    (0.2f64..5.0, 0.2f64..3.0, 0.001f64..0.95, -0.6f64..0.6, 0.05f64..50.0).prop_filter_map("subsonic", |(rho, c, mn, mt, beta)| {
        LinearizationState::new_analysis(rho, mn * c, mt * c, c, beta).ok()
    })
}

fn wavenumber() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0, any::<bool>()).prop_map(|(e, neg)| if neg { -(10f64.powf(e)) } else { 10f64.powf(e) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn one_growing_two_decaying(s in outflow_state(), xi in -100.0f64..100.0) {
        let m = lambda_roots(&s, xi).unwrap();
        prop_assert!(m.lambda1.re > 0.0);
        prop_assert!(m.lambda2.re < 0.0);
        prop_assert!(m.lambda3.re < 0.0);
    }

    #[test]
    fn principal_branch(s in outflow_state(), xi in -100.0f64..100.0) {
        let m = lambda_roots(&s, xi).unwrap();
        let want = m.a_xi * m.a_xi + xi * xi * (s.c_bar * s.c_bar - s.u_bar * s.u_bar);
        prop_assert!((m.r_xi * m.r_xi - want).norm() <= 1e-12 * want.norm().max(1.0));
        prop_assert!(m.r_xi.re >= 0.0);
    }

    #[test]
    fn roots_are_roots(s in outflow_state(), xi in -100.0f64..100.0) {
        let m = lambda_roots(&s, xi).unwrap();
        // the symbols are quadratic in lambda; scale by the size of their terms
        let scale = (s.beta.powi(2)).max((s.c_bar * m.lambda1.norm()).powi(2)).max((s.c_bar * xi).powi(2));
        prop_assert!(m.residual(&s) <= 1e-12 * scale);
    }

    #[test]
    fn two_step_convergence(s in outflow_state(), xi in wavenumber(), ar in -3.0f64..3.0, ai in -3.0f64..3.0) {
        let r = continuous_two_step_check(&s, xi, Complex64::new(ar, ai)).unwrap();
        prop_assert!(r.relative <= 1e-12, "relative {:e}", r.relative);
    }

    #[test]
    fn correction_matches_closed_form(s in outflow_state(), xi in wavenumber()) {
        let ag = Complex64::new(1.0, 0.5);
        let r = continuous_two_step_check(&s, xi, ag).unwrap();
        let cf = correction_closed_form(&s, xi, ag).unwrap();
        let got = [r.first.tilde1, r.first.tilde2, r.first.tilde3];
        for k in 0..3 {
            prop_assert!((got[k] - cf[k]).norm() <= 1e-10 * cf[k].norm().max(1e-300));
        }
    }
}
