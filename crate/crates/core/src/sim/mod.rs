//! Monte Carlo engine: PPP geometry sampling, per-geometry conditional
//! statistics, and empirical meta-distribution curves.

pub mod ccdf;
pub mod coverage;
pub mod geometry;

pub use ccdf::{
    empirical_meta_ccdf, sample_statistics, CcdfCurve, CurveMetadata, Statistic, StatisticSample,
};
pub use coverage::{
    conditional_mean_packet_time, conditional_ps_ci, conditional_ps_itm, conditional_rate,
    itm_mark_factor, ItmCoverageTable, RateSample, SchemeConfig, SchemeEvaluator, SchemeKind,
    TimeGridKind,
};
pub use geometry::{
    default_window_radius, sample_geometry, sample_geometry_counted, GeometryRealization, RngSeed,
};
