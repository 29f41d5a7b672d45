use euler_core::{Complex64, LinearizationState};
use symbol_analysis::*;

#[test]
fn unit_sound_speed_case_matches_printed_correction() {
    // beta=1, u=0.3, v=0.2, c=1, xi=1, alpha_gamma=1
    let s = LinearizationState::new(1.0, 0.3, 0.2, 1.0, 1.0).unwrap();
    let ag = Complex64::new(1.0, 0.0);
    let r = continuous_two_step_check(&s, 1.0, ag).unwrap();
    let m = lambda_roots(&s, 1.0).unwrap();
    // printed forms, valid as written when c = 1
    let t1 = -ag / (m.a_xi + s.u_bar * m.r_xi);
    let t2 = -ag / (m.a_xi * s.c_bar - s.u_bar * m.r_xi);
    assert!((r.first.tilde1 - t1).norm() < 1e-14);
    assert!((r.first.tilde2 - t2).norm() < 1e-14);
    // downstream Dirichlet condition on the correction
    assert!((r.first.tilde2 + r.first.tilde3).norm() < 1e-14);
    assert!(r.relative < 1e-13);
}

#[test]
fn hundred_states_twenty_wavenumbers() {
    let mut worst = 0.0f64;
    for k in 0..100 {
        let t = k as f64;
        let c = 0.5 + 1.5 * (t * 0.61).sin().abs();
        let s = LinearizationState::new(0.3 + (t * 0.17).cos().abs(), c * (0.01 + 0.9 * (t * 0.23).sin().abs()), 0.3 * c * (t * 0.41).sin(), c, 0.1 + 20.0 * (t * 0.07).cos().abs())
            .unwrap();
        for j in 0..20 {
            let mag = 10f64.powf(-2.0 + 4.0 * (j / 2) as f64 / 9.0);
            let xi = if j % 2 == 0 { mag } else { -mag };
            let r = continuous_two_step_check(&s, xi, Complex64::new(1.0, -0.5)).unwrap();
            worst = worst.max(r.relative);
        }
    }
    assert!(worst <= 1e-12, "worst {worst:e}");
}
