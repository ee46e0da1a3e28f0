//! Gauss hypergeometric kernels via integral representations.
//!
//! The two parameter families needed here are evaluated through integral
//! forms that stay valid for every nonnegative argument, where the Gauss
//! series would diverge:
//!
//! * `hyp_h(n, δ, θ)` computes H(θ) = δ θ^δ ∫₀^θ (1-(1+y)^(-n)) y^(-1-δ) dy,
//!   so that ₂F₁([n, -δ]; 1-δ; -θ) = 1 + H(θ).
//! * `hyp_mu_term(δ, θ)` computes ₂F₁([1, δ]; 1+δ; -θ) = δ ∫₀¹ x^(δ-1)/(1+θx) dx.
//! * `hyp_j_product(δ, a, b)` computes the two-argument kernel
//!   J(a, b) = δ ∫₀¹ [1 - 1/((1+ay)(1+by))] y^(-1-δ) dy, which collapses to
//!   H with n = 2 on the diagonal.
//!
//! Endpoint power singularities are removed by the substitution
//! y = s^(1/(1-δ)) (resp. x = s^(1/δ)), after which the integrands are
//! bounded and smooth; large arguments are split at y = 1 and the tail is
//! folded back onto a bounded integrand. The plain Gauss series
//! [`hyp_series`] is kept as a small-argument cross-check oracle.

use crate::error::{Error, Result};
use crate::special::quad::{integrate, QuadratureSpec};

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_nan() || delta <= 0.0 || delta >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1) (path-loss exponent > 2), got {delta}"
        )));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_nan() || theta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "theta must be nonnegative, got {theta}"
        )));
    }
    Ok(())
}

/// (1 - (1+y)^(-n)) / y, stable for small y.
fn one_minus_pow_ratio(n: f64, y: f64) -> f64 {
    if y == 0.0 {
        return n;
    }
    -(-n * y.ln_1p()).exp_m1() / y
}

/// H(θ) with ₂F₁([n, -δ]; 1-δ; -θ) = 1 + H(θ).
///
/// Nonnegative, zero at θ = 0, strictly increasing in both θ and n, and
/// asymptotically proportional to θ^δ. Infinite θ maps to +∞, which callers
/// fold into a zero moment.
pub fn hyp_h(n: u32, delta: f64, theta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_theta(theta)?;
    if n < 1 {
        return Err(Error::InvalidParameter(
            "hyp_h order n must be at least 1".into(),
        ));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    if theta.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let nf = f64::from(n);
    let spec = QuadratureSpec::KERNEL;
    let inv_exp = 1.0 / (1.0 - delta);

    if theta <= 1.0 {
        // H = δ θ/(1-δ) ∫₀¹ ĝ(θ s^(1/(1-δ))) ds with ĝ(y) = (1-(1+y)^(-n))/y.
        let core = integrate(
            |s: f64| one_minus_pow_ratio(nf, theta * s.powf(inv_exp)),
            0.0,
            1.0,
            &spec,
        )?;
        return Ok(delta * theta * inv_exp * core);
    }

    // θ > 1: split ∫₀^θ at y = 1. The head keeps the same substitution; the
    // tail substitutes y = 1/u, leaving ∫ u^(n+δ-1) (1+u)^(-n) du on (1/θ, 1]
    // plus the closed-form ∫₁^θ y^(-1-δ) dy.
    let head = integrate(
        |s: f64| one_minus_pow_ratio(nf, s.powf(inv_exp)),
        0.0,
        1.0,
        &spec,
    )? * inv_exp;
    let tail_sub = integrate(
        |u: f64| ((nf + delta - 1.0) * u.ln() - nf * u.ln_1p()).exp(),
        1.0 / theta,
        1.0,
        &spec,
    )?;
    let theta_pow = theta.powf(delta);
    Ok(delta * theta_pow * (head - tail_sub) + (theta_pow - 1.0))
}

/// ₂F₁([1, δ]; 1+δ; -θ) for θ ≥ 0; equals 1 at θ = 0 and decays to 0.
pub fn hyp_mu_term(delta: f64, theta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(1.0);
    }
    if theta.is_infinite() {
        return Ok(0.0);
    }

    let spec = QuadratureSpec::KERNEL;
    if theta <= 1.0 {
        // x = s^(1/δ) turns δ ∫₀¹ x^(δ-1)/(1+θx) dx into ∫₀¹ ds/(1+θ s^(1/δ)).
        return integrate(|s: f64| 1.0 / (1.0 + theta * s.powf(1.0 / delta)), 0.0, 1.0, &spec);
    }

    // θ > 1: δ θ^(-δ) ∫₀^θ w^(δ-1)/(1+w) dw, split at w = 1, both pieces
    // desingularized by power substitutions.
    let head = integrate(
        |s: f64| 1.0 / (1.0 + s.powf(1.0 / delta)),
        0.0,
        1.0,
        &spec,
    )? / delta;
    let inv_exp = 1.0 / (1.0 - delta);
    let lo = theta.powf(-(1.0 - delta));
    let tail = integrate(|s: f64| 1.0 / (1.0 + s.powf(inv_exp)), lo, 1.0, &spec)? * inv_exp;
    Ok(delta * theta.powf(-delta) * (head + tail))
}

/// Product-moment kernel J(a, b) of the two-threshold coverage expectation.
///
/// Symmetric in (a, b); J(θ, θ) coincides with H(2, δ, θ) under the change
/// of variables y' = θy. Returns +∞ once 1/(1+J) is below machine noise.
pub fn hyp_j_product(delta: f64, a: f64, b: f64) -> Result<f64> {
    check_delta(delta)?;
    check_theta(a)?;
    check_theta(b)?;
    if a == 0.0 && b == 0.0 {
        return Ok(0.0);
    }
    if a.is_infinite() || b.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let m = a.max(b);
    // J >= (m^δ - 1)/2, so beyond this point 1/(1+J) < 5e-15 and the exact
    // value is irrelevant to any downstream moment.
    if delta * m.ln() > 34.0 {
        return Ok(f64::INFINITY);
    }

    let spec = QuadratureSpec::KERNEL;
    let inv_exp = 1.0 / (1.0 - delta);
    let y0 = if m > 1.0 { 1.0 / m } else { 1.0 };

    // Head [0, y0]: with y = y0 s^(1/(1-δ)), the integrand becomes the
    // bounded, positive ĝ(y) = ((a+b) + a b y)/((1+ay)(1+by)).
    let g_hat = |y: f64| ((a + b) + a * b * y) / ((1.0 + a * y) * (1.0 + b * y));
    let head = integrate(|s: f64| g_hat(y0 * s.powf(inv_exp)), 0.0, 1.0, &spec)?;
    let mut j = delta * y0.powf(1.0 - delta) * inv_exp * head;

    if y0 < 1.0 {
        // Tail [y0, 1]: ∫ y^(-1-δ) dy in closed form minus the remainder,
        // which after y = e^(-x) ... y = 1/w, w = e^x is evaluated in log
        // space to dodge overflow for extreme arguments.
        let la = a.ln();
        let lb = b.ln();
        let lse = |x: f64, ly: f64| -> f64 {
            // ln(e^x + e^ly), tolerating ly = -inf (argument zero).
            if ly == f64::NEG_INFINITY {
                return x;
            }
            let hi = x.max(ly);
            hi + (-(x - ly).abs()).exp().ln_1p()
        };
        let remainder = integrate(
            |x: f64| ((2.0 + delta) * x - lse(x, la) - lse(x, lb)).exp(),
            0.0,
            m.ln(),
            &spec,
        )?;
        j += (y0.powf(-delta) - 1.0) - delta * remainder;
    }
    Ok(j)
}

/// Plain Gauss series ₂F₁(a, b; c; z) for |z| < 1.
///
/// Terminates when the remaining tail is provably below roughly 1e-15 of
/// the accumulated sum; used as an independent oracle for the integral
/// representations in their common domain.
pub fn hyp_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.is_nan() || z.abs() >= 1.0 {
        return Err(Error::SeriesDivergent(z));
    }
    if c <= 0.0 && (c - c.round()).abs() < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "series parameter c must not be a nonpositive integer, got {c}"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }

    const MAX_TERMS: usize = 200_000;
    let z_bar = 0.5 * (1.0 + z.abs());
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            // Terminating series (a or b a nonpositive integer).
            return Ok(sum);
        }
        sum += term;
        // Once the term ratio has dropped below z_bar < 1, the tail is
        // geometrically dominated and can be bounded directly.
        if ratio.abs() <= z_bar && term.abs() * z_bar / (1.0 - z_bar) < 1e-15 * sum.abs().max(1.0)
        {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonConvergence(MAX_TERMS))
}
