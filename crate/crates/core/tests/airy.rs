use airykit::airy_fn::{
    airy, airy_generalized, airy_generalized_two_var, airy_two_var, ode_residual_airy_two_var, ode_residual_generalized,
    ode_residual_watson, real_axis_generalized, real_axis_watson, watson_w, Derivative,
};
use airykit::{Error, QuadratureConfig};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn generalized_functions_match_real_axis_quadrature() {
    let c = cfg();
    for q in [3, 5, 7] {
        for x in [-6.0, -2.5, -0.4, 0.0, 0.9, 3.0] {
            let got = airy_generalized(q, x, &c).unwrap().value;
            let want = real_axis_generalized(q, x, 1e-11).unwrap();
            assert!((got - want).abs() < 1e-8, "q={q} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn two_variable_forms_reduce_by_scaling() {
    let c = cfg();
    // q·y = 1 collapses to the one-variable function
    for x in [-1.5, 0.2, 2.0] {
        let a = airy_generalized_two_var(5, x, 0.2, &c).unwrap().value;
        let b = airy_generalized(5, x, &c).unwrap().value;
        assert!((a - b).abs() < 1e-12);
        let a3 = airy_two_var(x, 1.0 / 3.0, &c).unwrap().value;
        assert!((a3 - airy(x, &c).unwrap().value).abs() < 1e-12);
    }
    // Ai^(7)(x, y) = (7y)^{-1/7} Ai^(7)(x (7y)^{-1/7})
    let s = 14f64.powf(-1.0 / 7.0);
    let lhs = airy_generalized_two_var(7, 1.0, 2.0, &c).unwrap().value;
    let rhs = s * airy_generalized(7, s, &c).unwrap().value;
    assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
}

#[test]
fn finite_difference_residuals() {
    let c = cfg();
    for (x, y) in [(0.0, 1.0 / 3.0), (2.0, 1.0), (-3.0, 0.5)] {
        let r = ode_residual_airy_two_var(x, y, Derivative::FiniteDifference(1e-3), &c).unwrap();
        assert!(r <= 1e-6, "x={x} y={y}: {r:e}");
    }
    for (q, h, tol) in [(3, 1e-3, 1e-6), (5, 1e-2, 1e-4), (7, 2e-2, 1e-3)] {
        for x in [-2.0, 0.5, 1.5] {
            let r = ode_residual_generalized(q, x, Derivative::FiniteDifference(h), &c).unwrap();
            assert!(r <= tol, "q={q} x={x}: {r:e}");
        }
    }
}

#[test]
fn finite_difference_residual_shrinks_quadratically() {
    let c = cfg();
    let r: Vec<f64> = [4e-2, 2e-2]
        .iter()
        .map(|&h| ode_residual_generalized(5, 0.7, Derivative::FiniteDifference(h), &c).unwrap())
        .collect();
    let ratio = r[0] / r[1];
    assert!((3.0..5.0).contains(&ratio), "{r:?}");
}

#[test]
fn two_variable_function_needs_positive_y() {
    assert!(matches!(airy_two_var(0.3, 0.0, &cfg()), Err(Error::Domain(_))));
    assert!(matches!(airy_two_var(0.3, -1.0, &cfg()), Err(Error::Domain(_))));
}

#[test]
fn watson_matches_real_axis_quadrature() {
    let c = cfg();
    for i in -12..=12 {
        let x = i as f64 * 0.5;
        let got = watson_w(x, &c).unwrap().value;
        let want = real_axis_watson(x, 1e-11).unwrap();
        assert!((got - want).abs() < 1e-8, "x={x}: {got} vs {want}");
    }
}

#[test]
fn watson_decays_at_sample_points() {
    let c = cfg();
    let w: Vec<f64> = [2.0, 3.0, 4.0, 5.0, 6.0].iter().map(|&x| watson_w(x, &c).unwrap().value.abs()).collect();
    assert!(w.windows(2).all(|p| p[1] < p[0]), "{w:?}");
}

#[test]
fn watson_tail_follows_the_endpoint_asymptote() {
    // the t = 0 endpoint dominates for x > 0: W ≈ -sin(2x²)/(4x), so |W| decays
    // like 1/(4x) but is not monotone between sign changes
    let c = cfg();
    for i in 0..=40 {
        let x = 4.0 + i as f64 * 0.1;
        let w = watson_w(x, &c).unwrap().value;
        let asym = -(2.0 * x * x).sin() / (4.0 * x);
        assert!((w - asym).abs() < 0.3 / (4.0 * x).powi(2), "x={x}: {w} vs {asym}");
    }
}

/// `W'' + 4x²W = 0` is not satisfied by W; at x = 0 the residual equals
/// `W''(0) = -4Γ(3/4)cos(3π/8) - Γ(1/4)sin(π/8) ≈ -3.263`.
#[test]
fn watson_ode_residual() {
    let c = cfg();
    let worst = (-12..=12)
        .map(|i| ode_residual_watson(i as f64 * 0.25, Derivative::UnderIntegral, &c).unwrap())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-5, "worst residual {worst:.4} on |x| ≤ 3");
}

#[test]
fn watson_second_derivative_at_origin() {
    let want = -4.0 * 1.225_416_702_465_178 * (3.0 * std::f64::consts::PI / 8.0).cos()
        - 3.625_609_908_221_908 * (std::f64::consts::PI / 8.0).sin();
    let r = ode_residual_watson(0.0, Derivative::UnderIntegral, &cfg()).unwrap();
    assert!((r - want.abs()).abs() < 1e-9, "{r} vs {}", want.abs());
}
