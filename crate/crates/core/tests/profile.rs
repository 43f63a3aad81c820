use std::time::Instant;

use pmshock_core::{solve_profile, verify_profile, FluxSpec};

#[test]
fn logistic_oracle_for_linear_diffusion() {
    let start = Instant::now();
    let p = solve_profile(&FluxSpec::Burgers, 1.0, 1.0, (-30.0, 30.0), 1e-10).unwrap();
    let elapsed = start.elapsed();
    let err = (0..=6000)
        .map(|i| -30.0 + 0.01 * i as f64)
        .map(|xi| (p.value(xi) - 1.0 / (1.0 + (xi / 2.0).exp())).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-6, "{err}");
    assert!(elapsed.as_secs_f64() < 1.0, "{elapsed:?}");
}

#[test]
fn free_boundary_is_finite_with_the_predicted_slope() {
    for m in [1.1, 1.25, 1.5] {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, m, (-80.0, 40.0), 1e-10).unwrap();
        let x_r = p.x_r();
        assert!(x_r.is_finite());
        for k in 0..100 {
            assert_eq!(p.value(x_r + 0.01 + 0.3 * k as f64), 0.0);
        }
        let predicted = (m - 1.0) * (0.0 - p.gamma()) / m;
        let slope = p.free_boundary_slope().unwrap();
        assert!((slope / predicted - 1.0).abs() < 0.02, "m={m}: {slope} vs {predicted}");
    }
}

#[test]
fn derivative_bound_has_no_violations() {
    for m in [1.0, 1.1, 1.25, 4.0 / 3.0, 1.5, 1.9] {
        let p = solve_profile(&FluxSpec::Burgers, 1.0, m, (-80.0, 40.0), 1e-10).unwrap();
        let r = verify_profile(&p, &FluxSpec::Burgers);
        assert_eq!(r.max_derivative_bound_violation, 0.0, "m={m}");
        assert_eq!(r.max_monotonicity_violation, 0.0, "m={m}");
    }
    let quad = FluxSpec::Quadratic { coef: 2.0 };
    let p = solve_profile(&quad, 0.5, 1.25, (-80.0, 40.0), 1e-10).unwrap();
    assert_eq!(verify_profile(&p, &quad).max_derivative_bound_violation, 0.0);
}
