//! Beta approximations of the per-user coverage probability and rate
//! distributions, for rateless and fixed-rate transmission.

use crate::analytics::mark_law::ItmMarkLaw;
use crate::analytics::moments::{
    coverage_moment_ci, coverage_moment_itm, product_moment, tphi_moments,
};
use crate::analytics::params::{InterferenceModel, MomentSet, NetworkParams, TphiMoments};
use crate::error::{Error, Result};
use crate::special::beta::{beta_moment_fit, beta_weighted_mean, reg_inc_beta_upper, BetaParams};
use crate::special::quad::QuadratureSpec;

/// Entry point of the analytical pipeline: owns the network parameters,
/// the interference model and (for the time-varying model) the precomputed
/// mark law. All evaluation methods are pure; build once, then evaluate
/// grids concurrently.
#[derive(Debug, Clone)]
pub struct Analytics {
    params: NetworkParams,
    model: InterferenceModel,
    mark_law: Option<ItmMarkLaw>,
}

impl Analytics {
    pub fn new(params: NetworkParams, model: InterferenceModel) -> Result<Self> {
        let mark_law = match model {
            InterferenceModel::ConstantInterference => None,
            InterferenceModel::TimeVaryingItm => Some(ItmMarkLaw::compute(&params)?),
        };
        Ok(Analytics {
            params,
            model,
            mark_law,
        })
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    pub fn model(&self) -> InterferenceModel {
        self.model
    }

    /// The mark law; present exactly under the time-varying model.
    pub fn mark_law(&self) -> Option<&ItmMarkLaw> {
        self.mark_law.as_ref()
    }

    /// n-th moment of the conditional coverage probability P_s(t).
    pub fn coverage_moment(&self, order: u32, t: f64) -> Result<MomentSet> {
        match &self.mark_law {
            Some(law) => coverage_moment_itm(order, t, &self.params, law),
            None => coverage_moment_ci(order, t, &self.params),
        }
    }

    /// E[P_s(t) P_s(u)] for two packet times.
    pub fn product_moment(&self, t: f64, u: f64) -> Result<f64> {
        product_moment(t, u, &self.params, self.mark_law.as_ref())
    }

    /// First two moments of the conditional mean packet time.
    pub fn tphi_moments(&self) -> Result<TphiMoments> {
        tphi_moments(&self.params, self.model, self.mark_law.as_ref())
    }

    /// Beta approximation of the distribution of P_s(N) across geometries.
    pub fn coverage_distribution(&self) -> Result<CoverageDistribution> {
        let n = self.params.delay_budget();
        let m1 = self.coverage_moment(1, n)?;
        let m2 = self.coverage_moment(2, n)?;
        let shape = beta_moment_fit(m1.value, m2.value)?;
        Ok(CoverageDistribution { shape })
    }

    /// Beta-mixture approximation of the rateless per-user rate
    /// distribution. Performs the heavy ν₂ double quadrature; construct
    /// once per scenario.
    pub fn rate_distribution(&self) -> Result<RateDistribution> {
        let coverage = self.coverage_distribution()?.shape;
        let tphi = self.tphi_moments()?;
        let n = self.params.delay_budget();
        let scaled = beta_moment_fit(tphi.nu1 / n, tphi.nu2 / (n * n))?;
        Ok(RateDistribution {
            coverage_shape: coverage,
            tphi_shape: scaled,
            tphi_moments: tphi,
            packet_bits: self.params.packet_bits(),
            delay_budget: n,
        })
    }

    /// CCDF of the per-user rate under fixed-rate coding at rate K/N.
    ///
    /// Uses the exact constant-interference moments regardless of the
    /// configured model, and is exactly zero at and beyond the rate
    /// ceiling K/N.
    pub fn fixed_rate_ccdf(&self, rate: f64) -> Result<f64> {
        fixed_rate_ccdf(rate, &self.params)
    }
}

/// Beta approximation of the per-user coverage probability P_s(N).
#[derive(Debug, Clone, Copy)]
pub struct CoverageDistribution {
    shape: BetaParams,
}

impl CoverageDistribution {
    /// P(P_s(N) > p): regularized upper incomplete beta of the fitted pair.
    pub fn ccdf(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "coverage argument must lie in [0, 1], got {p}"
            )));
        }
        reg_inc_beta_upper(p, self.shape.shape_a(), self.shape.shape_b())
    }

    pub fn shape(&self) -> &BetaParams {
        &self.shape
    }
}

/// Approximate distribution of the rateless per-user rate R_N, built from
/// the coverage beta fit at t = N and the beta fit of T_φ/N.
#[derive(Debug, Clone, Copy)]
pub struct RateDistribution {
    coverage_shape: BetaParams,
    tphi_shape: BetaParams,
    tphi_moments: TphiMoments,
    packet_bits: f64,
    delay_budget: f64,
}

impl RateDistribution {
    /// P(R_N > r) = E_Y [ B̄(r N Y / K; γ̄, β) / B(γ̄, β) ] with
    /// Y = T_φ/N beta distributed; the incomplete-beta argument saturates
    /// at 1 (zero contribution) since P_s(N) cannot exceed 1.
    pub fn ccdf(&self, rate: f64) -> Result<f64> {
        if rate.is_nan() || rate < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "rate must be nonnegative, got {rate}"
            )));
        }
        if rate == 0.0 {
            return Ok(1.0);
        }
        let ratio = rate * self.delay_budget / self.packet_bits;
        let ga = self.coverage_shape.shape_a();
        let gb = self.coverage_shape.shape_b();
        let tail = |y: f64| -> f64 {
            let x = ratio * y;
            if x >= 1.0 {
                0.0
            } else {
                reg_inc_beta_upper(x, ga, gb).unwrap_or(f64::NAN)
            }
        };
        let spec = QuadratureSpec::default();
        let value = beta_weighted_mean(tail, &self.tphi_shape, &spec)?;
        Ok(value.clamp(0.0, 1.0))
    }

    pub fn coverage_shape(&self) -> &BetaParams {
        &self.coverage_shape
    }

    pub fn tphi_shape(&self) -> &BetaParams {
        &self.tphi_shape
    }

    pub fn tphi_moments(&self) -> &TphiMoments {
        &self.tphi_moments
    }
}

/// CCDF of the fixed-rate per-user rate R_N = (K/N) P_s(N | Φ).
pub fn fixed_rate_ccdf(rate: f64, params: &NetworkParams) -> Result<f64> {
    if rate.is_nan() || rate < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "rate must be nonnegative, got {rate}"
        )));
    }
    let n = params.delay_budget();
    let k = params.packet_bits();
    if rate * n >= k {
        return Ok(0.0);
    }
    let m1 = coverage_moment_ci(1, n, params)?;
    let m2 = coverage_moment_ci(2, n, params)?;
    let shape = beta_moment_fit(m1.value, m2.value)?;
    reg_inc_beta_upper(rate * n / k, shape.shape_a(), shape.shape_b())
}
