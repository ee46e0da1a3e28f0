//! Numerical kernels: adaptive quadrature, the hypergeometric families used
//! by the coverage analysis, beta/incomplete-beta machinery, and monotone
//! interpolation. Everything here is a pure function of its inputs and safe
//! to call from concurrent workers.

pub mod beta;
pub mod hyp;
pub mod interp;
pub mod quad;

pub use beta::{
    beta_fn, beta_moment_fit, beta_weighted_mean, ln_beta, ln_gamma, reg_inc_beta_lower,
    reg_inc_beta_upper, BetaParams,
};
pub use hyp::{hyp_h, hyp_j_product, hyp_mu_term, hyp_series};
pub use interp::MonotoneCubic;
pub use quad::{gauss_legendre, gauss_legendre_scaled, integrate, QuadratureSpec};
