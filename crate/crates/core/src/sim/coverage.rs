//! Conditional (per-geometry) coverage probability, mean packet time and
//! per-user rate for the three transmission schemes.
//!
//! Under Rayleigh fading the conditional coverage probability is a closed
//! product over interferers, so no fading is ever simulated:
//!
//! * constant interference: each factor is 1/(1 + θ_t (D/|X_k|)^α);
//! * independent thinning: each factor is the mark-averaged
//!   E[1/(1 + θ_t (D/|X_k|)^α η̄)], computed by quadrature against the
//!   tabulated mark CDF, and cached in a log-argument table so Monte Carlo
//!   sweeps pay one interpolation per interferer.
//!
//! All products are accumulated in log space; an interferer at distance D
//! with an overflowing threshold cleanly drives coverage to zero.

use crate::analytics::mark_law::{coverage_time_floor, ItmMarkLaw};
use crate::analytics::params::{InterferenceModel, NetworkParams};
use crate::error::{Error, Result};
use crate::sim::geometry::GeometryRealization;
use crate::special::interp::MonotoneCubic;
use crate::special::quad::{gauss_legendre_scaled, integrate, QuadratureSpec};

/// ln(1 + e^x) without overflow.
fn softplus(x: f64) -> f64 {
    if x > 36.0 {
        x
    } else if x < -36.0 {
        x.exp()
    } else {
        x.exp().ln_1p()
    }
}

/// Transmission scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Decode as soon as accumulated mutual information suffices.
    Rateless,
    /// One fixed-rate codeword spanning the whole budget N.
    FixedRate,
    /// Fixed-rate codes selectable at packet times i·N/levels.
    Amc,
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemeKind::Rateless => write!(f, "rateless"),
            SchemeKind::FixedRate => write!(f, "fixed"),
            SchemeKind::Amc => write!(f, "amc"),
        }
    }
}

/// Packet-time resolution for the rateless scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeGridKind {
    /// Continuous decode times; mean packet time by quadrature.
    Continuous,
    /// Integer channel uses t = 1..N; mean packet time by summation.
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    pub amc_levels: u32,
    pub time_grid: TimeGridKind,
}

impl SchemeConfig {
    pub fn new(kind: SchemeKind, amc_levels: u32, time_grid: TimeGridKind) -> Result<Self> {
        if amc_levels < 1 {
            return Err(Error::InvalidParameter(
                "amc_levels must be at least 1".into(),
            ));
        }
        Ok(SchemeConfig {
            kind,
            amc_levels,
            time_grid,
        })
    }

    pub fn rateless() -> Self {
        SchemeConfig {
            kind: SchemeKind::Rateless,
            amc_levels: 4,
            time_grid: TimeGridKind::Continuous,
        }
    }

    pub fn fixed_rate() -> Self {
        SchemeConfig {
            kind: SchemeKind::FixedRate,
            ..Self::rateless()
        }
    }

    pub fn amc(levels: u32) -> Result<Self> {
        Self::new(SchemeKind::Amc, levels, TimeGridKind::Continuous)
    }
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self::rateless()
    }
}

/// Conditional coverage P_s(t | Φ) under constant interference:
/// the exact Rayleigh-fading product over interferers.
pub fn conditional_ps_ci(
    geometry: &GeometryRealization,
    t: f64,
    params: &NetworkParams,
) -> Result<f64> {
    let ln_theta = params.ln_theta(t)?;
    let lws = geometry.log_interference_weights(params.alpha());
    Ok(ln_coverage_ci(ln_theta, &lws).exp())
}

fn ln_coverage_ci(ln_theta: f64, log_weights: &[f64]) -> f64 {
    -log_weights
        .iter()
        .map(|&lw| softplus(ln_theta + lw))
        .sum::<f64>()
}

/// Mark-averaged interference factor E[1 / (1 + c η̄(t))] for one
/// interferer, with η̄ = min(1, T̄/t) and T̄ drawn from the thinning mark
/// law. Exact quadrature path; the Monte Carlo engine uses
/// [`ItmCoverageTable`] instead.
pub fn itm_mark_factor(law: &ItmMarkLaw, t: f64, c: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "packet time must be positive, got {t}"
        )));
    }
    if c.is_nan() || c < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "interference coefficient must be nonnegative, got {c}"
        )));
    }
    if c == 0.0 {
        return Ok(1.0);
    }
    if c.is_infinite() {
        return Ok(0.0);
    }
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-9,
        max_subdivisions: 2000,
    };
    let base = 1.0 / (1.0 + c);
    if c <= 1.0 {
        // E = 1/(1+c) + ∫₀^{c/(1+c)} F(t w / (c (1-w))) dw.
        let w1 = c / (1.0 + c);
        let corr = integrate(
            |w: f64| law.cdf(t * w / (c * (1.0 - w))),
            0.0,
            w1,
            &spec,
        )?;
        return Ok(base + corr);
    }
    // Same integral after u = c(1-w): the mark CDF vanishes once its
    // argument drops below the grid floor, so the range is capped there
    // instead of running to u = c.
    let u_cap = 2.0 * t / law.grid_floor();
    let lo = c / (1.0 + c);
    let hi = c.min(u_cap);
    if hi <= lo {
        return Ok(base);
    }
    let corr = integrate(
        |u: f64| law.cdf((t / u) * (1.0 - u / c)),
        lo,
        hi,
        &spec,
    )? / c;
    Ok(base + corr)
}

/// Conditional coverage P_s(t | Φ) under the independent thinning model,
/// evaluating every interferer's mark average by quadrature. Slow but
/// direct; intended for verification and small batches.
pub fn conditional_ps_itm(
    geometry: &GeometryRealization,
    t: f64,
    params: &NetworkParams,
    law: &ItmMarkLaw,
) -> Result<f64> {
    let ln_theta = params.ln_theta(t)?;
    let mut ln_p = 0.0;
    for &lw in &geometry.log_interference_weights(params.alpha()) {
        let lc = ln_theta + lw;
        if lc >= 690.0 {
            // Factor below e^-680: coverage is zero to double precision.
            return Ok(0.0);
        }
        let factor = itm_mark_factor(law, t, lc.exp())?;
        if factor <= 0.0 {
            return Ok(0.0);
        }
        ln_p += factor.ln();
    }
    Ok(ln_p.exp())
}

/// Log-argument table of the thinning interference factor at one packet
/// time: ln E[1/(1+c η̄)] as a function of ln c, with asymptotic branches
/// below and above the tabulated window.
#[derive(Debug, Clone)]
pub struct ItmCoverageTable {
    t: f64,
    omega_t: f64,
    x_lo: f64,
    x_hi: f64,
    /// λ(x) = ln E + ln(1+c): bounded, smooth, flat at both ends.
    lambda: MonotoneCubic,
    lambda_hi: f64,
}

/// Below this coefficient the linearization ln E = -c ω(t) is exact to
/// under 1e-16.
const TABLE_C_LO: f64 = 1e-8;
/// Above this coefficient λ has converged to its limit to under 1e-9.
const TABLE_C_HI: f64 = 1e10;
/// Grid pitch in ln c; interpolation error scales as the fourth power.
const TABLE_PITCH: f64 = 0.026;

impl ItmCoverageTable {
    pub fn build(law: &ItmMarkLaw, params: &NetworkParams, t: f64) -> Result<Self> {
        let theta = params.theta(t)?;
        let omega_t = law.activity_fraction(t);
        let x_lo = TABLE_C_LO.ln();
        let x_hi = theta.clamp(TABLE_C_LO * 2.0, TABLE_C_HI).ln();
        let span = x_hi - x_lo;
        let count = ((span / TABLE_PITCH).ceil() as usize).clamp(16, 2400);
        let mut xs = Vec::with_capacity(count);
        let mut ys = Vec::with_capacity(count);
        for i in 0..count {
            let x = x_lo + span * i as f64 / (count - 1) as f64;
            let c = x.exp();
            let e = itm_mark_factor(law, t, c)?;
            xs.push(x);
            ys.push(e.ln() + c.ln_1p());
        }
        let lambda_hi = *ys.last().unwrap();
        Ok(ItmCoverageTable {
            t,
            omega_t,
            x_lo,
            x_hi,
            lambda: MonotoneCubic::new(xs, ys)?,
            lambda_hi,
        })
    }

    pub fn packet_time(&self) -> f64 {
        self.t
    }

    /// ln E[1/(1+c η̄)] for c = e^x.
    pub fn ln_factor(&self, x: f64) -> f64 {
        if x <= self.x_lo {
            return -x.exp() * self.omega_t;
        }
        if x >= self.x_hi {
            return self.lambda_hi - softplus(x);
        }
        self.lambda.eval(x) - softplus(x)
    }

    pub fn factor(&self, c: f64) -> f64 {
        if c <= 0.0 {
            return 1.0;
        }
        self.ln_factor(c.ln()).exp()
    }
}

enum NodeKernel {
    Ci,
    Itm(ItmCoverageTable),
}

struct CoverageNode {
    ln_theta: f64,
    /// ln ω(t) under thinning, 0 under constant interference; sets the
    /// strength of the mean far-field completion.
    ln_activity: f64,
    kernel: NodeKernel,
}

/// Per-geometry quantities shared by every node evaluation.
struct GeometryView {
    log_weights: Vec<f64>,
    ln_serving: f64,
    ln_window: f64,
}

impl GeometryView {
    fn of(geometry: &GeometryRealization, alpha: f64) -> Self {
        GeometryView {
            log_weights: geometry.log_interference_weights(alpha),
            ln_serving: geometry.serving_distance().ln(),
            ln_window: geometry.window_radius().ln(),
        }
    }
}

impl CoverageNode {
    fn build(params: &NetworkParams, law: Option<&ItmMarkLaw>, t: f64) -> Result<Self> {
        let ln_theta = params.ln_theta(t)?;
        let (ln_activity, kernel) = match law {
            Some(l) => (
                l.activity_fraction(t).ln(),
                NodeKernel::Itm(ItmCoverageTable::build(l, params, t)?),
            ),
            None => (0.0, NodeKernel::Ci),
        };
        Ok(CoverageNode {
            ln_theta,
            ln_activity,
            kernel,
        })
    }

    fn ln_coverage_window(&self, log_weights: &[f64]) -> f64 {
        match &self.kernel {
            NodeKernel::Ci => ln_coverage_ci(self.ln_theta, log_weights),
            NodeKernel::Itm(table) => log_weights
                .iter()
                .map(|&lw| table.ln_factor(self.ln_theta + lw))
                .sum(),
        }
    }

    /// Expected log-attenuation from the unsampled BSs beyond the window:
    /// λ ∫_{|x|>R} (1 - E[1/(1+θ̄(D/|x|)^α η̄)]) dx ≈ πλ δ/(1-δ) θ̄ D^α R^(2-α),
    /// with θ̄ = ω(t) θ_t. Exact to O(θ̄ (D/R)^α)²; fluctuations around this
    /// mean are orders of magnitude below Monte Carlo noise.
    fn ln_far_field(&self, params: &NetworkParams, view: &GeometryView) -> f64 {
        let delta = params.delta();
        let alpha = params.alpha();
        let ln_coeff = (std::f64::consts::PI * params.lambda() * delta / (1.0 - delta)).ln();
        let exponent = ln_coeff
            + self.ln_theta
            + self.ln_activity
            + alpha * view.ln_serving
            + (2.0 - alpha) * view.ln_window;
        -exponent.exp()
    }

    fn ln_coverage(&self, params: &NetworkParams, view: &GeometryView, far_field: bool) -> f64 {
        let mut ln_p = self.ln_coverage_window(&view.log_weights);
        if far_field {
            ln_p += self.ln_far_field(params, view);
        }
        ln_p
    }

    fn coverage(&self, params: &NetworkParams, view: &GeometryView, far_field: bool) -> f64 {
        self.ln_coverage(params, view, far_field).exp()
    }
}

/// Per-geometry rate with its capping flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSample {
    /// Bits per channel use.
    pub rate: f64,
    /// True when the degenerate-geometry cap at K (decode in one channel
    /// use) was applied.
    pub capped: bool,
}

// Geometric panels for the continuous mean-packet-time quadrature.
const TPHI_PANELS: usize = 16;
const TPHI_PANEL_NODES: usize = 8;

/// Precomputed per-scenario machinery evaluating coverage, mean packet
/// time and rate for many geometries. Immutable after construction; share
/// freely across worker threads.
///
/// By default the evaluator estimates the infinite-plane statistic: the
/// sampled window is completed with the expected log-attenuation of the
/// far field. [`SchemeEvaluator::finite_window`] turns the completion off,
/// reducing every quantity to a pure function of the sampled geometry (the
/// contract of the standalone `conditional_*` functions).
pub struct SchemeEvaluator {
    params: NetworkParams,
    scheme: SchemeConfig,
    far_field: bool,
    deadline: CoverageNode,
    /// (weight, node) pairs for ∫₀^N (1 - P_s) dt, continuous grid.
    tphi_nodes: Vec<(f64, CoverageNode)>,
    /// Nodes at t = 1..N-1 for the integer grid (rateless oracle path).
    integer_nodes: Vec<CoverageNode>,
    /// Nodes at i·N/L, i = 1..L-1, for AMC mean packet time.
    amc_nodes: Vec<CoverageNode>,
    t_head: f64,
    head_node: CoverageNode,
    mark_law: Option<ItmMarkLaw>,
}

impl SchemeEvaluator {
    pub fn new(
        params: NetworkParams,
        scheme: SchemeConfig,
        model: InterferenceModel,
    ) -> Result<Self> {
        let law = match model {
            InterferenceModel::ConstantInterference => None,
            InterferenceModel::TimeVaryingItm => Some(ItmMarkLaw::compute(&params)?),
        };
        Self::with_mark_law(params, scheme, law)
    }

    /// Evaluator without the far-field completion: statistics of exactly
    /// the sampled geometry and nothing else.
    pub fn finite_window(
        params: NetworkParams,
        scheme: SchemeConfig,
        mark_law: Option<ItmMarkLaw>,
    ) -> Result<Self> {
        let mut evaluator = Self::with_mark_law(params, scheme, mark_law)?;
        evaluator.far_field = false;
        Ok(evaluator)
    }

    /// Builds the evaluator around an existing mark law (`None` selects the
    /// constant-interference model).
    pub fn with_mark_law(
        params: NetworkParams,
        scheme: SchemeConfig,
        mark_law: Option<ItmMarkLaw>,
    ) -> Result<Self> {
        let n = params.delay_budget();
        let law = mark_law.as_ref();
        let deadline = CoverageNode::build(&params, law, n)?;
        let t_head = coverage_time_floor(&params);
        let head_node = CoverageNode::build(&params, law, t_head)?;

        let mut tphi_nodes = Vec::new();
        if scheme.kind == SchemeKind::Rateless && scheme.time_grid == TimeGridKind::Continuous {
            let ratio = (n / t_head).powf(1.0 / TPHI_PANELS as f64);
            let mut lo = t_head;
            for _ in 0..TPHI_PANELS {
                let hi = (lo * ratio).min(n);
                let (nodes, weights) = gauss_legendre_scaled(TPHI_PANEL_NODES, lo, hi);
                for (&t, &w) in nodes.iter().zip(&weights) {
                    tphi_nodes.push((w, CoverageNode::build(&params, law, t)?));
                }
                lo = hi;
            }
        }

        let mut integer_nodes = Vec::new();
        if scheme.kind == SchemeKind::Rateless && scheme.time_grid == TimeGridKind::Integer {
            if (n - n.round()).abs() > 1e-9 || n < 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "integer time grid requires an integer delay budget, got {n}"
                )));
            }
            let m = n.round() as usize;
            for j in 1..m {
                integer_nodes.push(CoverageNode::build(&params, law, j as f64)?);
            }
        }

        let mut amc_nodes = Vec::new();
        if scheme.kind == SchemeKind::Amc {
            let levels = scheme.amc_levels as f64;
            for i in 1..scheme.amc_levels {
                let t = n * f64::from(i) / levels;
                amc_nodes.push(CoverageNode::build(&params, law, t)?);
            }
        }

        Ok(SchemeEvaluator {
            params,
            scheme,
            far_field: true,
            deadline,
            tphi_nodes,
            integer_nodes,
            amc_nodes,
            t_head,
            head_node,
            mark_law,
        })
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    pub fn scheme(&self) -> &SchemeConfig {
        &self.scheme
    }

    pub fn mark_law(&self) -> Option<&ItmMarkLaw> {
        self.mark_law.as_ref()
    }

    /// P_s(N | Φ).
    pub fn coverage_at_deadline(&self, geometry: &GeometryRealization) -> f64 {
        let view = GeometryView::of(geometry, self.params.alpha());
        self.deadline.coverage(&self.params, &view, self.far_field)
    }

    /// Conditional coverage at an arbitrary packet time (tabulates a fresh
    /// kernel; prefer [`SchemeEvaluator::coverage_at_many`] for sweeps).
    pub fn coverage_at(&self, geometry: &GeometryRealization, t: f64) -> Result<f64> {
        let node = CoverageNode::build(&self.params, self.mark_law.as_ref(), t)?;
        let view = GeometryView::of(geometry, self.params.alpha());
        Ok(node.coverage(&self.params, &view, self.far_field))
    }

    /// P_s(t | Φ) for many geometries at one packet time, tabulating the
    /// interference kernel once.
    pub fn coverage_at_many(
        &self,
        t: f64,
        geometries: &[GeometryRealization],
    ) -> Result<Vec<f64>> {
        let node = CoverageNode::build(&self.params, self.mark_law.as_ref(), t)?;
        Ok(geometries
            .iter()
            .map(|g| {
                let view = GeometryView::of(g, self.params.alpha());
                node.coverage(&self.params, &view, self.far_field)
            })
            .collect())
    }

    /// Conditional mean packet time T_φ for the configured scheme.
    pub fn mean_packet_time(&self, geometry: &GeometryRealization) -> f64 {
        let view = GeometryView::of(geometry, self.params.alpha());
        self.mean_packet_time_from_view(&view)
    }

    fn mean_packet_time_from_view(&self, view: &GeometryView) -> f64 {
        let n = self.params.delay_budget();
        let p = &self.params;
        let ff = self.far_field;
        match (self.scheme.kind, self.scheme.time_grid) {
            (SchemeKind::FixedRate, _) => n,
            (SchemeKind::Amc, _) => {
                let levels = self.scheme.amc_levels as f64;
                let step = n / levels;
                // Left-endpoint sum over decode opportunities; P_s(0) = 0.
                let mut t_phi = step;
                for node in &self.amc_nodes {
                    t_phi += step * (1.0 - node.coverage(p, view, ff));
                }
                t_phi
            }
            (SchemeKind::Rateless, TimeGridKind::Continuous) => {
                // Head contribution below the coverage floor, then the
                // panel quadrature. Clamp into [0, N] against roundoff.
                let mut t_phi = self.t_head * (1.0 - self.head_node.coverage(p, view, ff));
                for (w, node) in &self.tphi_nodes {
                    t_phi += w * (1.0 - node.coverage(p, view, ff));
                }
                t_phi.clamp(0.0, n)
            }
            (SchemeKind::Rateless, TimeGridKind::Integer) => {
                let mut t_phi = 1.0; // j = 0 term: P_s(0) = 0.
                for node in &self.integer_nodes {
                    t_phi += 1.0 - node.coverage(p, view, ff);
                }
                t_phi.min(n)
            }
        }
    }

    /// Per-user rate R_N for the configured scheme.
    pub fn rate(&self, geometry: &GeometryRealization) -> RateSample {
        let view = GeometryView::of(geometry, self.params.alpha());
        let k = self.params.packet_bits();
        let n = self.params.delay_budget();
        let ps_n = self.deadline.coverage(&self.params, &view, self.far_field);
        match self.scheme.kind {
            SchemeKind::FixedRate => RateSample {
                rate: k / n * ps_n,
                capped: false,
            },
            SchemeKind::Rateless | SchemeKind::Amc => {
                let t_phi = self.mean_packet_time_from_view(&view);
                if t_phi <= 0.0 {
                    return RateSample {
                        rate: k,
                        capped: true,
                    };
                }
                let raw = k * ps_n / t_phi;
                if raw > k {
                    RateSample {
                        rate: k,
                        capped: true,
                    }
                } else {
                    RateSample {
                        rate: raw,
                        capped: false,
                    }
                }
            }
        }
    }
}

/// Conditional mean packet time T_φ = ∫₀^N (1 - P_s(t | Φ)) dt for the
/// rateless scheme, over exactly the sampled geometry. Direct path for
/// verification; prefer [`SchemeEvaluator`] for sweeps.
pub fn conditional_mean_packet_time(
    geometry: &GeometryRealization,
    params: &NetworkParams,
    law: Option<&ItmMarkLaw>,
    time_grid: TimeGridKind,
) -> Result<f64> {
    let scheme = SchemeConfig::new(SchemeKind::Rateless, 4, time_grid)?;
    let evaluator = SchemeEvaluator::finite_window(*params, scheme, law.cloned())?;
    Ok(evaluator.mean_packet_time(geometry))
}

/// Per-user rate of one geometry under the given scheme and model, over
/// exactly the sampled geometry.
pub fn conditional_rate(
    geometry: &GeometryRealization,
    params: &NetworkParams,
    scheme: SchemeConfig,
    law: Option<&ItmMarkLaw>,
) -> Result<RateSample> {
    let evaluator = SchemeEvaluator::finite_window(*params, scheme, law.cloned())?;
    Ok(evaluator.rate(geometry))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::geometry::{sample_geometry, RngSeed};

    fn params() -> NetworkParams {
        NetworkParams::with_unit_power(1.0, 3.0, 75.0, 200.0).unwrap()
    }

    #[test]
    fn ci_coverage_trivial_cases() {
        let p = params();
        // No interferers: empty product.
        let lonely = GeometryRealization::new(0.5, vec![], 10.0).unwrap();
        assert_eq!(conditional_ps_ci(&lonely, 200.0, &p).unwrap(), 1.0);

        // Single interferer at the serving distance with θ = 1: factor 1/2.
        let pk = NetworkParams::with_unit_power(1.0, 3.0, 75.0, 200.0).unwrap();
        let twin = GeometryRealization::new(1.0, vec![1.0], 10.0).unwrap();
        let v = conditional_ps_ci(&twin, 75.0, &pk).unwrap();
        assert!((v - 0.5).abs() < 1e-12, "{v}");
    }

    #[test]
    fn ci_coverage_monotone_in_time() {
        let p = params();
        let g = sample_geometry(&p, 8.0, RngSeed::new(5, 1)).unwrap();
        let mut prev = 0.0;
        for &t in &[5.0, 20.0, 50.0, 100.0, 200.0, 500.0] {
            let v = conditional_ps_ci(&g, t, &p).unwrap();
            assert!(v >= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn ci_coverage_zero_at_tiny_time() {
        let p = params();
        let g = sample_geometry(&p, 8.0, RngSeed::new(5, 2)).unwrap();
        assert_eq!(conditional_ps_ci(&g, 1e-6, &p).unwrap(), 0.0);
    }

    #[test]
    fn itm_factor_limits() {
        let p = NetworkParams::with_unit_power(1.0, 4.0, 75.0, 100.0).unwrap();
        let law = ItmMarkLaw::compute(&p).unwrap();
        assert_eq!(itm_mark_factor(&law, 50.0, 0.0).unwrap(), 1.0);
        assert_eq!(itm_mark_factor(&law, 50.0, f64::INFINITY).unwrap(), 0.0);
        // Thinning can only help: factor at least the CI one.
        for &c in &[1e-6, 1e-3, 0.1, 1.0, 10.0, 1e4, 1e9] {
            let e = itm_mark_factor(&law, 50.0, c).unwrap();
            assert!(
                e >= 1.0 / (1.0 + c) - 1e-14 && e <= 1.0,
                "c={c}: {e}"
            );
        }
    }

    #[test]
    fn itm_factor_at_floor_time_matches_ci() {
        // Below the mark floor every mark exceeds t, so η̄ = 1 exactly.
        let p = NetworkParams::with_unit_power(1.0, 4.0, 75.0, 100.0).unwrap();
        let law = ItmMarkLaw::compute(&p).unwrap();
        let t = law.grid_floor() * 0.9;
        for &c in &[0.5, 3.0, 100.0] {
            let e = itm_mark_factor(&law, t, c).unwrap();
            assert!((e - 1.0 / (1.0 + c)).abs() < 1e-9, "c={c}: {e}");
        }
    }

    #[test]
    fn itm_table_matches_exact_factor() {
        let p = NetworkParams::with_unit_power(1.0, 4.0, 75.0, 100.0).unwrap();
        let law = ItmMarkLaw::compute(&p).unwrap();
        let t = 40.0;
        let table = ItmCoverageTable::build(&law, &p, t).unwrap();
        // 20 pseudo-random coefficients across the tabulated range.
        for i in 0..20 {
            let x = -18.0 + 36.0 * ((i as f64 * 0.618_033_988_75) % 1.0);
            let c = x.exp().min(p.theta(t).unwrap());
            let exact = itm_mark_factor(&law, t, c).unwrap();
            let fast = table.factor(c);
            assert!(
                (fast - exact).abs() <= 1e-6,
                "c={c:.3e}: table {fast} vs exact {exact}"
            );
        }
    }

    #[test]
    fn itm_coverage_dominates_ci_pointwise() {
        let p = NetworkParams::with_unit_power(1.0, 4.0, 75.0, 100.0).unwrap();
        let law = ItmMarkLaw::compute(&p).unwrap();
        let g = sample_geometry(&p, 6.0, RngSeed::new(9, 3)).unwrap();
        for &t in &[10.0, 25.0, 50.0, 100.0] {
            let ci = conditional_ps_ci(&g, t, &p).unwrap();
            let itm = conditional_ps_itm(&g, t, &p, &law).unwrap();
            assert!(itm >= ci - 1e-12, "t={t}: itm {itm} < ci {ci}");
        }
    }

    #[test]
    fn mean_packet_time_trivial_cases() {
        let p = params();
        let lonely = GeometryRealization::new(0.5, vec![], 10.0).unwrap();
        let t_phi =
            conditional_mean_packet_time(&lonely, &p, None, TimeGridKind::Continuous).unwrap();
        // No interference: immediate decode at any positive time.
        assert!(t_phi < 0.05, "{t_phi}");

        let g = sample_geometry(&p, 8.0, RngSeed::new(5, 7)).unwrap();
        let v = conditional_mean_packet_time(&g, &p, None, TimeGridKind::Continuous).unwrap();
        assert!(v > 0.0 && v <= 200.0);
    }

    #[test]
    fn integer_grid_brackets_continuous() {
        let p = params();
        let g = sample_geometry(&p, 8.0, RngSeed::new(6, 4)).unwrap();
        let cont = conditional_mean_packet_time(&g, &p, None, TimeGridKind::Continuous).unwrap();
        let int = conditional_mean_packet_time(&g, &p, None, TimeGridKind::Integer).unwrap();
        assert!(int >= cont - 1e-9 && int <= cont + 1.0, "cont {cont}, int {int}");
    }

    #[test]
    fn fixed_rate_and_amc_level_one_agree() {
        let p = params();
        let g = sample_geometry(&p, 8.0, RngSeed::new(8, 0)).unwrap();
        let fixed = conditional_rate(&g, &p, SchemeConfig::fixed_rate(), None).unwrap();
        let amc1 = conditional_rate(&g, &p, SchemeConfig::amc(1).unwrap(), None).unwrap();
        assert!((fixed.rate - amc1.rate).abs() < 1e-12);
        assert!(fixed.rate <= 75.0 / 200.0 + 1e-12);
    }

    #[test]
    fn per_geometry_scheme_ordering() {
        let p = params();
        for stream in 0..20 {
            let g = sample_geometry(&p, 8.0, RngSeed::new(21, stream)).unwrap();
            let rl = conditional_rate(&g, &p, SchemeConfig::rateless(), None).unwrap();
            let amc = conditional_rate(&g, &p, SchemeConfig::amc(4).unwrap(), None).unwrap();
            let fx = conditional_rate(&g, &p, SchemeConfig::fixed_rate(), None).unwrap();
            assert!(
                rl.rate >= amc.rate - 1e-12 && amc.rate >= fx.rate - 1e-12,
                "stream {stream}: {} {} {}",
                rl.rate,
                amc.rate,
                fx.rate
            );
        }
    }

    #[test]
    fn no_interferer_rate_is_capped() {
        let p = params();
        let lonely = GeometryRealization::new(0.5, vec![], 10.0).unwrap();
        let r = conditional_rate(&lonely, &p, SchemeConfig::rateless(), None).unwrap();
        assert!(r.capped);
        assert_eq!(r.rate, 75.0);
    }

    #[test]
    fn fixed_rate_with_certain_coverage_hits_ceiling() {
        let p = params();
        let lonely = GeometryRealization::new(0.5, vec![], 10.0).unwrap();
        let r = conditional_rate(&lonely, &p, SchemeConfig::fixed_rate(), None).unwrap();
        assert!((r.rate - 75.0 / 200.0).abs() < 1e-12);
        assert!(!r.capped);
    }
}
