//! Packet-time mark law of the independent thinning model.
//!
//! Interferers under the time-varying model carry i.i.d. packet-time marks.
//! Their CDF F, the mean decode time μ feeding it, and the mean activity
//! fraction ω(t) = (1/t)∫₀ᵗ (1-F) are computed once here and tabulated on a
//! log grid, because the moment pipeline and the simulator evaluate them at
//! millions of points.

use crate::analytics::params::NetworkParams;
use crate::error::{Error, Result};
use crate::special::hyp::{hyp_h, hyp_mu_term};
use crate::special::interp::MonotoneCubic;
use crate::special::quad::{gauss_legendre_scaled, integrate, QuadratureSpec};

// Grid density set by the 1e-6 interpolation-validation requirement: the
// quartic interpolation error at 512 points lands right at the tolerance,
// so tabulate at twice that.
const GRID_POINTS: usize = 1024;

/// Time below which θ_t is so large that coverage, and hence the mark CDF,
/// is numerically zero: θ_t^δ exceeds 1e12 for all t below it.
pub(crate) fn coverage_time_floor(params: &NetworkParams) -> f64 {
    let by_budget = 1e-4 * params.delay_budget();
    let by_threshold = params.packet_bits() * params.delta() / 40.0;
    by_budget.min(by_threshold)
}

#[derive(Debug, Clone)]
pub struct ItmMarkLaw {
    delta: f64,
    delay_budget: f64,
    mean_decode_time: f64,
    t_floor: f64,
    /// F on ln t over [t_floor, N].
    cdf: MonotoneCubic,
    /// ω on ln t over [t_floor, N].
    omega: MonotoneCubic,
}

impl ItmMarkLaw {
    /// Computes μ, tabulates F and ω for the given network parameters.
    pub fn compute(params: &NetworkParams) -> Result<Self> {
        let delta = params.delta();
        let n = params.delay_budget();
        let k = params.packet_bits();

        // μ = ∫₀^N (1 - ₂F₁([1,δ]; 1+δ; -θ_t)) dt. The integrand tends to 1
        // at t -> 0 and is smooth; endpoints are never evaluated.
        let mu_spec = QuadratureSpec {
            abs_tol: 1e-10 * n.max(1.0),
            rel_tol: 1e-10,
            max_subdivisions: 4000,
        };
        let mu = integrate(
            |t: f64| {
                let theta = (k / t).exp2() - 1.0;
                match hyp_mu_term(delta, theta) {
                    Ok(v) => 1.0 - v,
                    Err(_) => f64::NAN,
                }
            },
            0.0,
            n,
            &mu_spec,
        )?;
        if mu.is_nan() || mu <= 0.0 || mu > n * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "mean decode time {mu} escaped (0, N]; delay budget {n}"
            )));
        }
        let mu = mu.min(n);

        let t_floor = coverage_time_floor(params);
        let grid: Vec<f64> = (0..GRID_POINTS)
            .map(|i| t_floor * (n / t_floor).powf(i as f64 / (GRID_POINTS - 1) as f64))
            .collect();

        // F(t) = 1 / (1 + H(1, δ, θ_t min(1, μ/t))). Monotone by
        // construction up to quadrature noise, which the running max removes.
        let mut f_values = Vec::with_capacity(GRID_POINTS);
        let mut running = 0.0_f64;
        for &t in &grid {
            let theta = (k / t).exp2() - 1.0;
            let arg = theta * (mu / t).min(1.0);
            let h = hyp_h(1, delta, arg)?;
            running = running.max(1.0 / (1.0 + h));
            f_values.push(running);
        }
        let ln_grid: Vec<f64> = grid.iter().map(|t| t.ln()).collect();
        let cdf = MonotoneCubic::new(ln_grid.clone(), f_values.clone())?;

        // Cumulative ∫₀^t (1-F): the ramp below the floor contributes
        // t_floor·(1 - F(t_floor)/2); each grid panel is integrated with an
        // 8-point Gauss rule against the freshly built interpolant.
        let eval_cdf = |t: f64| -> f64 {
            if t <= t_floor {
                f_values[0] * (t / t_floor)
            } else {
                cdf.eval(t.ln())
            }
        };
        let mut omega_values = Vec::with_capacity(GRID_POINTS);
        let mut cumulative = t_floor * (1.0 - 0.5 * f_values[0]);
        omega_values.push((cumulative / grid[0]).min(1.0));
        for j in 1..GRID_POINTS {
            let (nodes, weights) = gauss_legendre_scaled(8, grid[j - 1], grid[j]);
            let panel: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * (1.0 - eval_cdf(x)))
                .sum();
            cumulative += panel;
            let prev = omega_values[j - 1];
            omega_values.push((cumulative / grid[j]).min(prev).clamp(0.0, 1.0));
        }
        let omega = MonotoneCubic::new(ln_grid, omega_values)?;

        Ok(ItmMarkLaw {
            delta,
            delay_budget: n,
            mean_decode_time: mu,
            t_floor,
            cdf,
            omega,
        })
    }

    /// Mean packet decode time μ of an interfering link, in channel uses.
    pub fn mean_decode_time(&self) -> f64 {
        self.mean_decode_time
    }

    /// CDF of the i.i.d. packet-time mark at `t`. Zero below the grid
    /// floor; the mass missing above N sits in an atom at N (truncation).
    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t <= self.t_floor {
            return self.cdf.first_y() * (t / self.t_floor);
        }
        if t >= self.delay_budget {
            return self.cdf.last_y();
        }
        self.cdf.eval(t.ln())
    }

    /// Mean fraction of `t` an interferer stays active, ω(t) ∈ [0, 1],
    /// nonincreasing, tending to 1 as t -> 0.
    pub fn activity_fraction(&self, t: f64) -> f64 {
        if t <= self.t_floor {
            return 1.0;
        }
        if t >= self.delay_budget {
            return self.omega.last_y();
        }
        self.omega.eval(t.ln())
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delay_budget(&self) -> f64 {
        self.delay_budget
    }

    /// Smallest tabulated time; below it F ≈ 0 and ω ≈ 1 hold to well
    /// under 1e-5.
    pub fn grid_floor(&self) -> f64 {
        self.t_floor
    }
}
