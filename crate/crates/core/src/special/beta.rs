//! Beta function, regularized incomplete beta, moment matching, and
//! beta-weighted averaging.

use crate::error::{Error, Result};
use crate::special::quad::{integrate, QuadratureSpec};

// Lanczos g = 7, 9-term coefficients, kept at published precision.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function, Lanczos approximation.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Complete beta function B(a, b).
pub fn beta_fn(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

fn check_shapes(a: f64, b: f64) -> Result<()> {
    if a.is_nan() || b.is_nan() || a <= 0.0 || b <= 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "beta shape parameters must be positive and finite, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Regularized lower incomplete beta I_x(a, b), continued-fraction form.
pub fn reg_inc_beta_lower(x: f64, a: f64, b: f64) -> Result<f64> {
    check_shapes(a, b)?;
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "incomplete beta argument must lie in [0, 1], got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    // Prefactor x^a (1-x)^b / B(a, b), in logs.
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b);
    let front = ln_front.exp();
    // The continued fraction converges fastest for x below the mean-ish
    // pivot; otherwise use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    let value = if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cont_frac(x, a, b)? / a
    } else {
        1.0 - front * beta_cont_frac(1.0 - x, b, a)? / b
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Regularized upper incomplete beta: mass of Beta(a, b) above `p`.
///
/// Evaluated through the complementary lower integral of the swapped
/// shapes, so it is 1 at p = 0 and exactly 0 at p = 1.
pub fn reg_inc_beta_upper(p: f64, a: f64, b: f64) -> Result<f64> {
    reg_inc_beta_lower(1.0 - p, b, a)
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_cont_frac(x: f64, a: f64, b: f64) -> Result<f64> {
    const MAX_ITER: usize = 400;
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 3e-16;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::SeriesNonConvergence(MAX_ITER))
}

/// Shape pair of a beta distribution obtained by moment matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    shape_a: f64,
    shape_b: f64,
}

impl BetaParams {
    pub fn new(shape_a: f64, shape_b: f64) -> Result<Self> {
        check_shapes(shape_a, shape_b)?;
        Ok(BetaParams { shape_a, shape_b })
    }

    pub fn shape_a(&self) -> f64 {
        self.shape_a
    }

    pub fn shape_b(&self) -> f64 {
        self.shape_b
    }

    /// First raw moment a/(a+b).
    pub fn mean(&self) -> f64 {
        self.shape_a / (self.shape_a + self.shape_b)
    }

    /// Second raw moment a(a+1)/((a+b)(a+b+1)).
    pub fn second_moment(&self) -> f64 {
        let s = self.shape_a + self.shape_b;
        self.shape_a * (self.shape_a + 1.0) / (s * (s + 1.0))
    }
}

/// Fits a beta distribution to the first two raw moments.
///
/// Requires m1 in (0,1) and m1^2 < m2 < m1; anything else cannot come from
/// a nondegenerate distribution on [0, 1] and is reported as degenerate
/// rather than clamped.
pub fn beta_moment_fit(m1: f64, m2: f64) -> Result<BetaParams> {
    if m1.is_nan() || m1 <= 0.0 || m1 >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "first moment must lie in (0, 1), got {m1}"
        )));
    }
    if !m2.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "second moment must be finite, got {m2}"
        )));
    }
    let variance = m2 - m1 * m1;
    if variance <= 0.0 {
        return Err(Error::DegenerateMoments(format!(
            "zero or negative variance: m1 = {m1}, m2 = {m2}"
        )));
    }
    if m2 >= m1 {
        return Err(Error::DegenerateMoments(format!(
            "second moment {m2} >= first moment {m1} is impossible on [0, 1]"
        )));
    }
    let shape_b = (m1 - m2) * (1.0 - m1) / variance;
    let shape_a = m1 * shape_b / (1.0 - m1);
    BetaParams::new(shape_a, shape_b)
}

/// Mean of `g` under Beta(a, b): ∫₀¹ g(y) y^(a-1) (1-y)^(b-1) dy / B(a, b).
///
/// The density singularities at the endpoints are absorbed by the power
/// substitutions y = (u^(1/a))/2 on the left half and mirrored on the
/// right, leaving bounded integrands for any positive shapes.
pub fn beta_weighted_mean<G: Fn(f64) -> f64>(
    g: G,
    shape: &BetaParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let a = shape.shape_a();
    let b = shape.shape_b();
    const C: f64 = 0.5;

    // ∫₀^c g(y) y^(a-1) (1-y)^(b-1) dy with y = c u^(1/a).
    let left = integrate(
        |u: f64| {
            let y = C * u.powf(1.0 / a);
            g(y) * ((b - 1.0) * (-y).ln_1p()).exp()
        },
        0.0,
        1.0,
        spec,
    )? * C.powf(a)
        / a;

    // Mirror for ∫_c^1, substituting z = 1 - y.
    let right = integrate(
        |u: f64| {
            let z = C * u.powf(1.0 / b);
            g(1.0 - z) * ((a - 1.0) * (-z).ln_1p()).exp()
        },
        0.0,
        1.0,
        spec,
    )? * C.powf(b)
        / b;

    Ok((left + right) / beta_fn(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-13);
        assert!((ln_gamma(2.0)).abs() < 1e-13);
        assert!((ln_gamma(5.0) - 24.0_f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn upper_beta_endpoints_and_uniform() {
        // Uniform: Beta(1,1), tail mass above p is 1 - p.
        assert_eq!(reg_inc_beta_upper(0.0, 2.0, 3.0).unwrap(), 1.0);
        assert_eq!(reg_inc_beta_upper(1.0, 2.0, 3.0).unwrap(), 0.0);
        let v = reg_inc_beta_upper(0.3, 1.0, 1.0).unwrap();
        assert!((v - 0.7).abs() < 1e-14);
    }

    #[test]
    fn upper_beta_symmetric_case() {
        // Beta(2,2) is symmetric about 1/2.
        let v = reg_inc_beta_upper(0.5, 2.0, 2.0).unwrap();
        assert!((v - 0.5).abs() < 1e-13);
    }

    #[test]
    fn lower_beta_matches_quadrature() {
        let spec = QuadratureSpec::default();
        for &(x, a, b) in &[(0.3, 2.5, 1.5), (0.7, 0.4, 3.0), (0.05, 5.0, 0.3)] {
            let direct = integrate(
                |y: f64| {
                    ((a - 1.0) * y.ln() + (b - 1.0) * (-y).ln_1p()).exp()
                },
                0.0,
                x,
                &spec,
            )
            .unwrap()
                / beta_fn(a, b);
            let cf = reg_inc_beta_lower(x, a, b).unwrap();
            assert!(
                (cf - direct).abs() < 1e-9,
                "x={x} a={a} b={b}: {cf} vs {direct}"
            );
        }
    }

    #[test]
    fn rejects_bad_shapes_and_arguments() {
        assert!(reg_inc_beta_lower(0.5, 0.0, 1.0).is_err());
        assert!(reg_inc_beta_lower(0.5, 1.0, -2.0).is_err());
        assert!(reg_inc_beta_lower(1.5, 1.0, 1.0).is_err());
        assert!(BetaParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn moment_fit_uniform_and_symmetric() {
        let p = beta_moment_fit(0.5, 1.0 / 3.0).unwrap();
        assert!((p.shape_a() - 1.0).abs() < 1e-12);
        assert!((p.shape_b() - 1.0).abs() < 1e-12);

        let p = beta_moment_fit(0.5, 0.3).unwrap();
        assert!((p.shape_a() - 2.0).abs() < 1e-12);
        assert!((p.shape_b() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn moment_fit_degenerate_cases() {
        assert!(matches!(
            beta_moment_fit(0.5, 0.25),
            Err(Error::DegenerateMoments(_))
        ));
        assert!(matches!(
            beta_moment_fit(0.5, 0.6),
            Err(Error::DegenerateMoments(_))
        ));
        assert!(beta_moment_fit(0.0, 0.1).is_err());
    }

    #[test]
    fn moment_fit_round_trip() {
        let shapes = [(0.1, 0.1), (0.5, 3.0), (2.0, 2.0), (17.0, 0.4), (50.0, 50.0)];
        for &(a, b) in &shapes {
            let p = BetaParams::new(a, b).unwrap();
            let fitted = beta_moment_fit(p.mean(), p.second_moment()).unwrap();
            assert!(
                (fitted.shape_a() / a - 1.0).abs() < 1e-9,
                "a: {} vs {a}",
                fitted.shape_a()
            );
            assert!(
                (fitted.shape_b() / b - 1.0).abs() < 1e-9,
                "b: {} vs {b}",
                fitted.shape_b()
            );
        }
    }

    #[test]
    fn weighted_mean_of_identity_is_mean() {
        let spec = QuadratureSpec::default();
        for &(a, b) in &[(2.0, 3.0), (0.6, 0.8), (10.0, 1.2)] {
            let p = BetaParams::new(a, b).unwrap();
            let m = beta_weighted_mean(|y| y, &p, &spec).unwrap();
            assert!((m - p.mean()).abs() < 1e-9, "({a},{b}): {m} vs {}", p.mean());
        }
    }

    #[test]
    fn weighted_mean_of_one_is_one() {
        let spec = QuadratureSpec::default();
        let p = BetaParams::new(0.3, 0.4).unwrap();
        let m = beta_weighted_mean(|_| 1.0, &p, &spec).unwrap();
        assert!((m - 1.0).abs() < 1e-9, "{m}");
    }
}
