//! Moments of the conditional coverage probability and of the conditional
//! mean packet time, for the constant-interference model (exact) and the
//! independent-thinning model (Jensen lower bounds).

use crate::analytics::mark_law::ItmMarkLaw;
use crate::analytics::params::{
    theta_of_t, InterferenceModel, MomentSet, NetworkParams, Provenance, TphiMoments,
};
use crate::error::{Error, Result};
use crate::special::hyp::{hyp_h, hyp_j_product};
use crate::special::quad::{gauss_legendre_scaled, integrate, QuadratureSpec};

/// n-th moment of P_s(t) under constant interference:
/// M_n = 1 / (1 + H(n, δ, θ_t)). Exact.
pub fn coverage_moment_ci(order: u32, t: f64, params: &NetworkParams) -> Result<MomentSet> {
    let theta = theta_of_t(params.packet_bits(), t)?;
    let h = hyp_h(order, params.delta(), theta)?;
    MomentSet::probability(order, 1.0 / (1.0 + h), Provenance::Exact)
}

/// n-th moment of P_s(t) under the independent thinning model:
/// M̃_n = 1 / (1 + H(n, δ, ω(t) θ_t)). Lower bound on the true moment.
pub fn coverage_moment_itm(
    order: u32,
    t: f64,
    params: &NetworkParams,
    law: &ItmMarkLaw,
) -> Result<MomentSet> {
    let theta = theta_of_t(params.packet_bits(), t)?;
    let thinned = law.activity_fraction(t) * theta;
    let h = hyp_h(order, params.delta(), thinned)?;
    MomentSet::probability(order, 1.0 / (1.0 + h), Provenance::LowerBound)
}

/// E[P_s(t) P_s(u)] ≈ 1 / (1 + J(θ̄_t, θ̄_u)) with θ̄ the activity-thinned
/// threshold. Exact under constant interference (`law = None`), a lower
/// bound under thinning.
pub fn product_moment(
    t: f64,
    u: f64,
    params: &NetworkParams,
    law: Option<&ItmMarkLaw>,
) -> Result<f64> {
    let bar = |time: f64| -> Result<f64> {
        let theta = theta_of_t(params.packet_bits(), time)?;
        Ok(match law {
            Some(l) => l.activity_fraction(time) * theta,
            None => theta,
        })
    };
    let j = hyp_j_product(params.delta(), bar(t)?, bar(u)?)?;
    Ok(1.0 / (1.0 + j))
}

/// Gauss–Legendre sizes for the ν₂ double integral; the coarse and fine
/// grids must agree or the result is rejected.
const NU2_GRID: usize = 64;
const NU2_GRID_CHECK: usize = 128;
const NU2_AGREEMENT: f64 = 1e-4;

/// First two moments of T_φ = E[T | Φ]:
/// ν₁ = N - ∫₀^N M₁(t) dt and ν₂ = N(2ν₁ - N) + ∬ E[P_s(t)P_s(u)] dt du.
pub fn tphi_moments(
    params: &NetworkParams,
    model: InterferenceModel,
    law: Option<&ItmMarkLaw>,
) -> Result<TphiMoments> {
    let law = match model {
        InterferenceModel::ConstantInterference => None,
        InterferenceModel::TimeVaryingItm => Some(law.ok_or_else(|| {
            Error::InvalidParameter("time-varying model requires a mark law".into())
        })?),
    };
    let n = params.delay_budget();

    let first_moment = |t: f64| -> f64 {
        let result = match law {
            Some(l) => coverage_moment_itm(1, t, params, l),
            None => coverage_moment_ci(1, t, params),
        };
        result.map(|m| m.value).unwrap_or(f64::NAN)
    };

    let spec = QuadratureSpec {
        abs_tol: 1e-9 * n.max(1.0),
        rel_tol: 1e-9,
        max_subdivisions: 4000,
    };
    let mean_coverage_integral = integrate(first_moment, 0.0, n, &spec)?;
    let nu1 = n - mean_coverage_integral;

    let product_integral = |points: usize| -> Result<f64> {
        let (nodes, weights) = gauss_legendre_scaled(points, 0.0, n);
        // Thinned thresholds once per node; +inf encodes overflow and makes
        // the corresponding product moment vanish.
        let mut bars = Vec::with_capacity(points);
        for &t in &nodes {
            let theta = theta_of_t(params.packet_bits(), t)?;
            bars.push(match law {
                Some(l) => l.activity_fraction(t) * theta,
                None => theta,
            });
        }
        let mut acc = 0.0;
        for i in 0..points {
            for jdx in i..points {
                let j = hyp_j_product(params.delta(), bars[i], bars[jdx])?;
                let q = 1.0 / (1.0 + j);
                let contrib = weights[i] * weights[jdx] * q;
                acc += if jdx == i { contrib } else { 2.0 * contrib };
            }
        }
        Ok(acc)
    };

    let coarse = product_integral(NU2_GRID)?;
    let fine = product_integral(NU2_GRID_CHECK)?;
    let scale = fine.abs().max(1e-12 * n * n);
    if (fine - coarse).abs() > NU2_AGREEMENT * scale {
        return Err(Error::QuadratureNonConvergence {
            subdivisions: NU2_GRID_CHECK,
            error_estimate: (fine - coarse).abs(),
            requested: NU2_AGREEMENT * scale,
        });
    }
    let nu2 = n * (2.0 * nu1 - n) + fine;

    // Postconditions hold analytically (the product moment dominates the
    // factored first moments); violations indicate a numerical defect.
    let slack = 1e-9 * n * n;
    if nu1.is_nan() || nu1 <= 0.0 || nu1 > n * (1.0 + 1e-12) {
        return Err(Error::DegenerateMoments(format!(
            "nu1 = {nu1} escaped (0, N], N = {n}"
        )));
    }
    if nu2 < nu1 * nu1 - slack || nu2 > n * nu1 + slack {
        return Err(Error::DegenerateMoments(format!(
            "nu2 = {nu2} outside [nu1^2, N nu1] = [{}, {}]",
            nu1 * nu1,
            n * nu1
        )));
    }

    Ok(TphiMoments {
        nu1: nu1.min(n),
        nu2: nu2.clamp(nu1 * nu1, n * nu1),
        provenance: match model {
            InterferenceModel::ConstantInterference => Provenance::Exact,
            InterferenceModel::TimeVaryingItm => Provenance::LowerBound,
        },
    })
}
