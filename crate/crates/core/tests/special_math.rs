//! Oracle-backed checks and property tests for the numerical kernels.

mod common;

use common::{adaptive_simpson, golden_sequence};
use proptest::prelude::*;
use ratemeta::special::*;

const KERNEL_SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 1e-12,
    rel_tol: 1e-10,
    max_subdivisions: 4000,
};

/// Brute-force H(n, δ, θ) through the desingularized integrand and an
/// adaptive Simpson integrator: an independent route to the same number.
fn hyp_h_oracle(n: u32, delta: f64, theta: f64) -> f64 {
    let inv = 1.0 / (1.0 - delta);
    let nf = f64::from(n);
    // H = δθ/(1-δ) ∫₀¹ (1-(1+θ s^(1/(1-δ)))^(-n)) / (θ s^(1/(1-δ))) ds,
    // with the integrand continued by n at s = 0.
    let core = adaptive_simpson(
        |s: f64| {
            let y = theta * s.powf(inv);
            if y < 1e-280 {
                nf
            } else {
                -(-nf * y.ln_1p()).exp_m1() / y
            }
        },
        0.0,
        1.0,
        1e-12,
    );
    delta * theta * inv * core
}

#[test]
fn quadrature_examples_from_contract() {
    let spec = QuadratureSpec::default();
    assert!((integrate(|x| x, 0.0, 1.0, &spec).unwrap() - 0.5).abs() < 1e-10);
    assert!((integrate(|x| x.powf(-0.5), 0.0, 1.0, &spec).unwrap() - 2.0).abs() < 1e-8);
    let v = integrate(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, &spec).unwrap();
    assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
}

#[test]
fn h_second_order_closed_form() {
    // n = 2, δ = 1/2, θ = 1: partial fractions give 3π/8 + 1/4.
    let expected = 3.0 * std::f64::consts::PI / 8.0 + 0.25;
    let got = hyp_h(2, 0.5, 1.0).unwrap();
    assert!((got - expected).abs() < 1e-11, "{got} vs {expected}");
    let oracle = hyp_h_oracle(2, 0.5, 1.0);
    assert!((oracle - expected).abs() < 1e-9, "oracle off: {oracle}");
}

#[test]
fn h_against_brute_force_oracle() {
    for &(n, delta, theta) in &[
        (2u32, 2.0 / 3.0, 1.0),
        (1, 2.0 / 3.0, 0.3),
        (3, 0.5, 4.0),
        (2, 0.4, 0.9),
    ] {
        let got = hyp_h(n, delta, theta).unwrap();
        let oracle = hyp_h_oracle(n, delta, theta);
        assert!(
            (got - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()),
            "H({n},{delta},{theta}): {got} vs oracle {oracle}"
        );
    }
}

#[test]
fn h_alpha_four_closed_form_log_grid() {
    // δ = 1/2: H(1, 1/2, θ) = √θ arctan √θ on a log grid over [1e-3, 1e3].
    for i in 0..=60 {
        let theta = 10f64.powf(-3.0 + 6.0 * i as f64 / 60.0);
        let expected = theta.sqrt() * theta.sqrt().atan();
        let got = hyp_h(1, 0.5, theta).unwrap();
        assert!(
            (got - expected).abs() <= 1e-10,
            "theta={theta}: |{got} - {expected}|"
        );
    }
}

#[test]
fn mu_term_quarter_pi() {
    let v = hyp_mu_term(0.5, 1.0).unwrap();
    assert!((v - std::f64::consts::FRAC_PI_4).abs() <= 1e-10);
    assert_eq!(hyp_mu_term(0.5, 0.0).unwrap(), 1.0);
    assert_eq!(hyp_mu_term(0.5, f64::INFINITY).unwrap(), 0.0);
}

#[test]
fn mu_term_against_oracle() {
    // Direct Simpson on the x-form with the x = s^(1/δ) substitution.
    for &(delta, theta) in &[(2.0 / 3.0, 0.5), (0.5, 7.0), (0.8, 123.0)] {
        let oracle = adaptive_simpson(
            |s: f64| 1.0 / (1.0 + theta * s.powf(1.0 / delta)),
            0.0,
            1.0,
            1e-12,
        );
        let got = hyp_mu_term(delta, theta).unwrap();
        assert!(
            (got - oracle).abs() < 1e-9,
            "mu({delta},{theta}): {got} vs {oracle}"
        );
    }
}

#[test]
fn series_log_closed_form() {
    let z: f64 = 0.5;
    let v = hyp_series(1.0, 1.0, 2.0, z).unwrap();
    assert!((v - (-(1.0 - z).ln() / z)).abs() < 1e-13);
    assert_eq!(hyp_series(0.3, -2.0, 1.7, 0.0).unwrap(), 1.0);
}

#[test]
fn reg_inc_beta_contract_values() {
    assert_eq!(reg_inc_beta_upper(0.0, 3.0, 0.5).unwrap(), 1.0);
    assert_eq!(reg_inc_beta_upper(1.0, 3.0, 0.5).unwrap(), 0.0);
    assert!((reg_inc_beta_upper(0.3, 1.0, 1.0).unwrap() - 0.7).abs() < 1e-13);
    assert!((reg_inc_beta_upper(0.5, 2.0, 2.0).unwrap() - 0.5).abs() < 1e-13);
}

#[test]
fn j_product_against_oracle() {
    // Direct Simpson of the J integrand in its positive form.
    for &(delta, a, b) in &[(0.5, 0.7, 2.0), (2.0 / 3.0, 1.0, 1.0), (0.5, 0.05, 9.0)] {
        let inv = 1.0 / (1.0 - delta);
        let oracle = delta * inv
            * adaptive_simpson(
                |s: f64| {
                    let y = s.powf(inv);
                    ((a + b) + a * b * y) / ((1.0 + a * y) * (1.0 + b * y))
                },
                0.0,
                1.0,
                1e-12,
            );
        let got = hyp_j_product(delta, a, b).unwrap();
        assert!(
            (got - oracle).abs() < 1e-8 * (1.0 + oracle),
            "J({delta},{a},{b}): {got} vs {oracle}"
        );
    }
}

#[test]
fn beta_weighted_mean_against_oracle() {
    // E[g(Y)] for g(y) = 1/(1+y) under Beta(2.5, 0.7), by adaptive Simpson
    // on the same substituted halves.
    let shape = BetaParams::new(2.5, 0.7).unwrap();
    let (a, b) = (2.5, 0.7);
    let left = adaptive_simpson(
        |u: f64| {
            let y = 0.5 * u.powf(1.0 / a);
            (1.0 - y).powf(b - 1.0) / (1.0 + y)
        },
        0.0,
        1.0,
        1e-12,
    ) * 0.5f64.powf(a)
        / a;
    let right = adaptive_simpson(
        |u: f64| {
            let z = 0.5 * u.powf(1.0 / b);
            (1.0 - z).powf(a - 1.0) / (2.0 - z)
        },
        0.0,
        1.0,
        1e-12,
    ) * 0.5f64.powf(b)
        / b;
    let oracle = (left + right) / beta_fn(a, b);
    let got = beta_weighted_mean(|y| 1.0 / (1.0 + y), &shape, &KERNEL_SPEC).unwrap();
    assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
}

#[test]
fn interpolation_validation_at_probe_points() {
    // Interpolants must reproduce a smooth monotone function to 1e-6 at
    // arbitrary probe points when built on the production grid density.
    let n = 512;
    let xs: Vec<f64> = (0..n).map(|i| -6.0 + 12.0 * i as f64 / (n - 1) as f64).collect();
    let f = |x: f64| 1.0 / (1.0 + (-x).exp());
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let interp = MonotoneCubic::new(xs, ys).unwrap();
    for i in 0..20 {
        let x = -6.0 + 12.0 * golden_sequence(i);
        assert!(
            (interp.eval(x) - f(x)).abs() < 1e-6,
            "probe {i} at x={x}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Series and integral representation agree on their common domain:
    /// ₂F₁([n, -δ]; 1-δ; z) = 1 + H(n, δ, -z) for z in (-0.9, 0).
    #[test]
    fn series_matches_h_representation(
        z in -0.9f64..-1e-6,
        n in 1u32..4,
        delta_pick in 0usize..2,
    ) {
        let delta = [0.5, 2.0 / 3.0][delta_pick];
        let series = hyp_series(f64::from(n), -delta, 1.0 - delta, z).unwrap();
        let integral = 1.0 + hyp_h(n, delta, -z).unwrap();
        prop_assert!(
            (series - integral).abs() <= 1e-8 * integral.abs().max(1.0),
            "z={}, n={}, delta={}: {} vs {}", z, n, delta, series, integral
        );
    }

    /// H is strictly increasing in θ and in the order n.
    #[test]
    fn h_monotone(
        t1 in 1e-3f64..1e3,
        scale in 1.01f64..10.0,
        n in 1u32..5,
        delta in 0.05f64..0.95,
    ) {
        let t2 = t1 * scale;
        let h_t1 = hyp_h(n, delta, t1).unwrap();
        let h_t2 = hyp_h(n, delta, t2).unwrap();
        prop_assert!(h_t1 < h_t2);
        let h_next = hyp_h(n + 1, delta, t1).unwrap();
        prop_assert!(h_t1 < h_next);
    }

    /// Upper and lower regularized incomplete beta sum to one.
    #[test]
    fn upper_plus_lower_is_one(
        p in 0.001f64..0.999,
        a in 0.1f64..20.0,
        b in 0.1f64..20.0,
    ) {
        let upper = reg_inc_beta_upper(p, a, b).unwrap();
        let lower = reg_inc_beta_lower(p, a, b).unwrap();
        prop_assert!((upper + lower - 1.0).abs() < 1e-11,
            "p={} a={} b={}: {} + {}", p, a, b, upper, lower);
    }

    /// Moment fit inverts the analytic beta moments over (0.1, 50)^2.
    #[test]
    fn beta_fit_round_trip(a in 0.1f64..50.0, b in 0.1f64..50.0) {
        let p = BetaParams::new(a, b).unwrap();
        let fitted = beta_moment_fit(p.mean(), p.second_moment()).unwrap();
        prop_assert!((fitted.shape_a() / a - 1.0).abs() < 1e-9);
        prop_assert!((fitted.shape_b() / b - 1.0).abs() < 1e-9);
    }

    /// J is symmetric and dominated by the sum of its one-argument parts.
    #[test]
    fn j_symmetric_and_bounded(
        a in 1e-3f64..1e3,
        b in 1e-3f64..1e3,
        delta in 0.1f64..0.9,
    ) {
        let j_ab = hyp_j_product(delta, a, b).unwrap();
        let j_ba = hyp_j_product(delta, b, a).unwrap();
        prop_assert!((j_ab - j_ba).abs() <= 1e-9 * (1.0 + j_ab.abs()));
        let h_a = hyp_h(1, delta, a).unwrap();
        let h_b = hyp_h(1, delta, b).unwrap();
        prop_assert!(j_ab <= h_a + h_b + 1e-8);
        prop_assert!(j_ab >= h_a.max(h_b) - 1e-8);
    }
}
