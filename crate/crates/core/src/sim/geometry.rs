//! Poisson-point-process geometry sampling.
//!
//! The typical user sits at the origin; BSs are a homogeneous PPP observed
//! in a disk window. The nearest point is the serving BS (its distance is
//! then exactly Rayleigh(1/sqrt(2πλ)) distributed), the rest interfere.
//! Only distances matter for SIR statistics, so angles are never drawn.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::analytics::params::NetworkParams;
use crate::error::{Error, Result};

/// Default window radius, in units of 1/sqrt(λ); far enough that truncated
/// interference is far below Monte Carlo noise for any α > 2.
pub const DEFAULT_WINDOW_FACTOR: f64 = 15.0;

/// Empty-window retries move to a distant substream so that retry draws
/// never collide with other realizations' streams.
const RETRY_STREAM_OFFSET: u64 = 1 << 48;
const MAX_EMPTY_RETRIES: u64 = 64;

/// Identifies one reproducible random stream: `master_seed` keys the
/// generator, `stream_id` selects an independent substream, so a
/// realization is fully determined by the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSeed {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngSeed {
            master_seed,
            stream_id,
        }
    }

    pub fn with_stream(self, stream_id: u64) -> Self {
        RngSeed {
            master_seed: self.master_seed,
            stream_id,
        }
    }

    pub(crate) fn build_rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// One sampled network geometry as seen from the typical user.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryRealization {
    serving_distance: f64,
    interferer_distances: Vec<f64>,
    window_radius: f64,
}

impl GeometryRealization {
    /// `interferer_distances` must be ascending and no closer than the
    /// serving distance (nearest-BS association).
    pub fn new(
        serving_distance: f64,
        interferer_distances: Vec<f64>,
        window_radius: f64,
    ) -> Result<Self> {
        if serving_distance.is_nan() || serving_distance <= 0.0 || !serving_distance.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "serving distance must be positive, got {serving_distance}"
            )));
        }
        if window_radius.is_nan() || window_radius < serving_distance {
            return Err(Error::InvalidParameter(
                "window radius must cover the serving BS".into(),
            ));
        }
        let mut prev = serving_distance;
        for &d in &interferer_distances {
            if d.is_nan() || d < prev || !d.is_finite() {
                return Err(Error::InvalidParameter(
                    "interferer distances must be ascending and at least the serving distance"
                        .into(),
                ));
            }
            prev = d;
        }
        Ok(GeometryRealization {
            serving_distance,
            interferer_distances,
            window_radius,
        })
    }

    pub fn serving_distance(&self) -> f64 {
        self.serving_distance
    }

    pub fn interferer_distances(&self) -> &[f64] {
        &self.interferer_distances
    }

    pub fn window_radius(&self) -> f64 {
        self.window_radius
    }

    /// ln((D/|X_k|)^α) per interferer: the log relative path gain each
    /// interfering link enjoys against the serving link. Kept in logs so
    /// extreme path-loss exponents can never overflow.
    pub fn log_interference_weights(&self, alpha: f64) -> Vec<f64> {
        let ln_d = self.serving_distance.ln();
        self.interferer_distances
            .iter()
            .map(|x| alpha * (ln_d - x.ln()))
            .collect()
    }
}

/// Samples one PPP geometry in a disk of `window_radius` around the user.
pub fn sample_geometry(
    params: &NetworkParams,
    window_radius: f64,
    seed: RngSeed,
) -> Result<GeometryRealization> {
    sample_geometry_counted(params, window_radius, seed).map(|(g, _)| g)
}

/// As [`sample_geometry`], also reporting how many empty windows were
/// redrawn (virtually always zero at realistic densities).
pub fn sample_geometry_counted(
    params: &NetworkParams,
    window_radius: f64,
    seed: RngSeed,
) -> Result<(GeometryRealization, u64)> {
    if window_radius.is_nan() || window_radius <= 0.0 || !window_radius.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "window radius must be positive, got {window_radius}"
        )));
    }
    let mean_count = params.lambda() * std::f64::consts::PI * window_radius * window_radius;
    let poisson = Poisson::new(mean_count)
        .map_err(|e| Error::InvalidParameter(format!("invalid Poisson mean {mean_count}: {e}")))?;

    for retry in 0..MAX_EMPTY_RETRIES {
        let mut rng = seed
            .with_stream(seed.stream_id.wrapping_add(retry * RETRY_STREAM_OFFSET))
            .build_rng();
        let count = poisson.sample(&mut rng) as usize;
        if count == 0 {
            continue;
        }
        // Uniform in the disk: radius R sqrt(U); 1-U keeps the draw in
        // (0, 1] so distances stay strictly positive.
        let mut distances: Vec<f64> = (0..count)
            .map(|_| window_radius * (1.0 - rng.gen::<f64>()).sqrt())
            .collect();
        distances.sort_by(|a, b| a.total_cmp(b));
        let serving = distances[0];
        let interferers = distances.split_off(1);
        let geometry = GeometryRealization::new(serving, interferers, window_radius)?;
        return Ok((geometry, retry));
    }
    Err(Error::EmptyWindow(MAX_EMPTY_RETRIES))
}

/// Default simulation window for the given density.
pub fn default_window_radius(params: &NetworkParams) -> f64 {
    DEFAULT_WINDOW_FACTOR / params.lambda().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> NetworkParams {
        NetworkParams::with_unit_power(1.0, 3.0, 75.0, 200.0).unwrap()
    }

    #[test]
    fn deterministic_per_seed() {
        let p = params();
        let seed = RngSeed::new(7, 42);
        let a = sample_geometry(&p, 10.0, seed).unwrap();
        let b = sample_geometry(&p, 10.0, seed).unwrap();
        assert_eq!(a, b);
        let c = sample_geometry(&p, 10.0, RngSeed::new(7, 43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn geometry_invariants() {
        let p = params();
        for stream in 0..50 {
            let g = sample_geometry(&p, 8.0, RngSeed::new(1, stream)).unwrap();
            assert!(g.serving_distance() > 0.0);
            let mut prev = g.serving_distance();
            for &d in g.interferer_distances() {
                assert!(d >= prev && d <= 8.0);
                prev = d;
            }
        }
    }

    #[test]
    fn log_weights_nonpositive() {
        let p = params();
        let g = sample_geometry(&p, 8.0, RngSeed::new(3, 0)).unwrap();
        for &lw in &g.log_interference_weights(p.alpha()) {
            assert!(lw <= 0.0);
        }
    }

    #[test]
    fn constructor_rejects_bad_geometry() {
        assert!(GeometryRealization::new(0.0, vec![], 5.0).is_err());
        assert!(GeometryRealization::new(1.0, vec![0.5], 5.0).is_err());
        assert!(GeometryRealization::new(1.0, vec![2.0, 1.5], 5.0).is_err());
        assert!(GeometryRealization::new(6.0, vec![], 5.0).is_err());
    }

    #[test]
    fn mean_count_matches_poisson_intensity() {
        // λ = 1, R = 20: mean count is 400π ≈ 1256.6.
        let p = params();
        let n_draws = 2000;
        let mut total = 0usize;
        for stream in 0..n_draws {
            let g = sample_geometry(&p, 20.0, RngSeed::new(11, stream)).unwrap();
            total += 1 + g.interferer_distances().len();
        }
        let mean = total as f64 / n_draws as f64;
        let expected = 400.0 * std::f64::consts::PI;
        // 3σ band for the averaged Poisson count.
        let tol = 3.0 * (expected / n_draws as f64).sqrt();
        assert!(
            (mean - expected).abs() < tol,
            "mean {mean} vs {expected} ± {tol}"
        );
    }
}
