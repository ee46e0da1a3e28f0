//! Empirical meta-distribution CCDFs over many sampled geometries.
//!
//! Realizations are independent work items with per-index random streams,
//! evaluated in parallel and reduced in index order, so a curve is a pure
//! function of (seed, parameters) regardless of thread scheduling.

use rayon::prelude::*;

use crate::analytics::params::{InterferenceModel, NetworkParams};
use crate::error::{Error, Result};
use crate::sim::coverage::{SchemeConfig, SchemeEvaluator};
use crate::sim::geometry::{default_window_radius, sample_geometry_counted, RngSeed};

/// Which per-geometry statistic the curve tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Conditional coverage probability P_s(N | Φ).
    CoverageProbability,
    /// Per-user rate R_N.
    Rate,
}

impl std::fmt::Display for Statistic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Statistic::CoverageProbability => write!(f, "coverage"),
            Statistic::Rate => write!(f, "rate"),
        }
    }
}

/// Provenance and bookkeeping attached to an empirical curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveMetadata {
    pub params: NetworkParams,
    pub scheme: SchemeConfig,
    pub model: InterferenceModel,
    pub statistic: Statistic,
    pub seed: RngSeed,
    pub window_radius: f64,
    /// Geometries whose degenerate rate was capped at K.
    pub capped_rates: u64,
    /// Empty-window redraws across all realizations.
    pub window_resamples: u64,
}

/// Monotone nonincreasing tabulation of P(statistic > axis value).
#[derive(Debug, Clone, PartialEq)]
pub struct CcdfCurve {
    pub axis: Vec<f64>,
    pub ccdf: Vec<f64>,
    /// Wilson 95% half-widths per grid point.
    pub ci_halfwidth: Vec<f64>,
    pub n_samples: usize,
    pub metadata: CurveMetadata,
}

impl CcdfCurve {
    fn validate(&self) -> Result<()> {
        if self.axis.is_empty() || self.axis.len() != self.ccdf.len() {
            return Err(Error::InvalidParameter(
                "curve axis and values must be nonempty and matched".into(),
            ));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter(
                "curve must be built from at least one sample".into(),
            ));
        }
        let mut prev = f64::INFINITY;
        for (&a, &c) in self.axis.iter().zip(&self.ccdf) {
            if !a.is_finite() {
                return Err(Error::InvalidParameter("axis must be finite".into()));
            }
            if !(0.0..=1.0).contains(&c) || c > prev {
                return Err(Error::InvalidParameter(
                    "ccdf must be nonincreasing within [0, 1]".into(),
                ));
            }
            prev = c;
        }
        Ok(())
    }

    /// Largest pointwise gap against another curve on the same grid.
    pub fn sup_deviation(&self, other: &[f64]) -> Result<f64> {
        if other.len() != self.ccdf.len() {
            return Err(Error::InvalidParameter(
                "sup deviation requires a matching grid".into(),
            ));
        }
        Ok(self
            .ccdf
            .iter()
            .zip(other)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Per-geometry statistics plus bookkeeping from one Monte Carlo sweep.
#[derive(Debug, Clone)]
pub struct StatisticSample {
    pub values: Vec<f64>,
    pub capped: u64,
    pub resamples: u64,
}

impl StatisticSample {
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Standard error of the sample mean.
    pub fn standard_error(&self) -> f64 {
        let n = self.values.len() as f64;
        let mean = self.mean();
        let var = self
            .values
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    }
}

/// Draws `n_real` geometries and evaluates the statistic on each.
///
/// Realization `i` consumes stream `seed.stream_id + i`; results are
/// ordered by index, so repeated calls are bit-identical.
pub fn sample_statistics(
    params: &NetworkParams,
    scheme: SchemeConfig,
    model: InterferenceModel,
    statistic: Statistic,
    n_real: usize,
    seed: RngSeed,
) -> Result<StatisticSample> {
    if n_real < 100 {
        return Err(Error::InvalidParameter(format!(
            "simulation runs need at least 100 realizations, got {n_real}"
        )));
    }
    let evaluator = SchemeEvaluator::new(*params, scheme, model)?;
    let window = default_window_radius(params);

    let per_real: Result<Vec<(f64, bool, u64)>> = (0..n_real)
        .into_par_iter()
        .map(|i| {
            let stream = seed.with_stream(seed.stream_id.wrapping_add(i as u64));
            let (geometry, resamples) = sample_geometry_counted(params, window, stream)?;
            let (value, capped) = match statistic {
                Statistic::CoverageProbability => {
                    (evaluator.coverage_at_deadline(&geometry), false)
                }
                Statistic::Rate => {
                    let r = evaluator.rate(&geometry);
                    (r.rate, r.capped)
                }
            };
            Ok((value, capped, resamples))
        })
        .collect();
    let per_real = per_real?;

    Ok(StatisticSample {
        values: per_real.iter().map(|r| r.0).collect(),
        capped: per_real.iter().filter(|r| r.1).count() as u64,
        resamples: per_real.iter().map(|r| r.2).sum(),
    })
}

/// Empirical meta-distribution CCDF of the chosen statistic on `grid`.
pub fn empirical_meta_ccdf(
    params: &NetworkParams,
    scheme: SchemeConfig,
    model: InterferenceModel,
    statistic: Statistic,
    n_real: usize,
    grid: &[f64],
    seed: RngSeed,
) -> Result<CcdfCurve> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty CCDF grid".into()));
    }
    for w in grid.windows(2) {
        if w[0] >= w[1] || w[0].is_nan() || w[1].is_nan() {
            return Err(Error::InvalidParameter(
                "CCDF grid must be strictly ascending".into(),
            ));
        }
    }
    let sample = sample_statistics(params, scheme, model, statistic, n_real, seed)?;

    let mut sorted = sample.values.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    let mut ccdf = Vec::with_capacity(grid.len());
    let mut halfwidth = Vec::with_capacity(grid.len());
    for &g in grid {
        // Count of statistics strictly above g.
        let above = n - sorted.partition_point(|&v| v <= g);
        let p_hat = above as f64 / n as f64;
        ccdf.push(p_hat);
        halfwidth.push(wilson_halfwidth(p_hat, n));
    }

    let curve = CcdfCurve {
        axis: grid.to_vec(),
        ccdf,
        ci_halfwidth: halfwidth,
        n_samples: n,
        metadata: CurveMetadata {
            params: *params,
            scheme,
            model,
            statistic,
            seed,
            window_radius: default_window_radius(params),
            capped_rates: sample.capped,
            window_resamples: sample.resamples,
        },
    };
    curve.validate()?;
    Ok(curve)
}

/// Wilson score 95% half-width for a binomial proportion.
fn wilson_halfwidth(p_hat: f64, n: usize) -> f64 {
    const Z: f64 = 1.959_963_984_540_054;
    let nf = n as f64;
    let z2 = Z * Z;
    Z * (p_hat * (1.0 - p_hat) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> NetworkParams {
        NetworkParams::with_unit_power(1.0, 3.0, 75.0, 200.0).unwrap()
    }

    fn grid(n: usize, max: f64) -> Vec<f64> {
        (0..n).map(|i| max * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn coverage_curve_invariants() {
        let p = params();
        let curve = empirical_meta_ccdf(
            &p,
            SchemeConfig::rateless(),
            InterferenceModel::ConstantInterference,
            Statistic::CoverageProbability,
            200,
            &grid(21, 1.0),
            RngSeed::new(42, 0),
        )
        .unwrap();
        assert_eq!(curve.ccdf[0], 1.0, "coverage is a.s. positive");
        assert!(curve.ccdf.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(curve.n_samples, 200);
    }

    #[test]
    fn bit_identical_for_same_seed() {
        let p = params();
        let run = || {
            empirical_meta_ccdf(
                &p,
                SchemeConfig::rateless(),
                InterferenceModel::ConstantInterference,
                Statistic::Rate,
                150,
                &grid(31, 7.5),
                RngSeed::new(7, 1000),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        for (x, y) in a.ccdf.iter().zip(&b.ccdf) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn different_seed_changes_curve() {
        let p = params();
        let mk = |seed| {
            empirical_meta_ccdf(
                &p,
                SchemeConfig::rateless(),
                InterferenceModel::ConstantInterference,
                Statistic::Rate,
                150,
                &grid(31, 7.5),
                seed,
            )
            .unwrap()
        };
        assert_ne!(mk(RngSeed::new(7, 0)).ccdf, mk(RngSeed::new(8, 0)).ccdf);
    }

    #[test]
    fn rejects_small_runs_and_bad_grids() {
        let p = params();
        let err = empirical_meta_ccdf(
            &p,
            SchemeConfig::rateless(),
            InterferenceModel::ConstantInterference,
            Statistic::Rate,
            50,
            &grid(11, 1.0),
            RngSeed::new(1, 0),
        );
        assert!(err.is_err());
        let err = empirical_meta_ccdf(
            &p,
            SchemeConfig::rateless(),
            InterferenceModel::ConstantInterference,
            Statistic::Rate,
            150,
            &[0.5, 0.5],
            RngSeed::new(1, 0),
        );
        assert!(err.is_err());
    }

    #[test]
    fn wilson_halfwidth_sane() {
        assert!(wilson_halfwidth(0.5, 100) < 0.11);
        assert!(wilson_halfwidth(0.0, 100) > 0.0);
        assert!(wilson_halfwidth(0.5, 10_000) < 0.011);
    }
}
