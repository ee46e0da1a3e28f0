//! Analytical pipeline: SIR thresholds, the thinning mark law, moments of
//! the conditional coverage probability and packet time, and the beta
//! approximations of the per-user coverage and rate distributions.

pub mod mark_law;
pub mod meta;
pub mod moments;
pub mod params;

pub use mark_law::ItmMarkLaw;
pub use meta::{fixed_rate_ccdf, Analytics, CoverageDistribution, RateDistribution};
pub use moments::{coverage_moment_ci, coverage_moment_itm, product_moment, tphi_moments};
pub use params::{
    theta_of_t, InterferenceModel, MomentSet, NetworkParams, Provenance, TphiMoments,
};
