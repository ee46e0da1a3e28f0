//! Network-level parameters and the moment/threshold vocabulary shared by
//! the analytics and the simulator.

use crate::error::{Error, Result};

/// Physical and model constants of the downlink scenario.
///
/// Transmit power cancels in the interference-limited SIR and never affects
/// any result; it is carried for completeness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    lambda: f64,
    alpha: f64,
    packet_bits: f64,
    delay_budget: f64,
    tx_power: f64,
}

impl NetworkParams {
    /// `lambda`: BS density (per unit area), `alpha`: path-loss exponent
    /// (> 2), `packet_bits`: payload size K, `delay_budget`: N channel
    /// uses, `tx_power`: ρ.
    pub fn new(
        lambda: f64,
        alpha: f64,
        packet_bits: f64,
        delay_budget: f64,
        tx_power: f64,
    ) -> Result<Self> {
        let all = [lambda, alpha, packet_bits, delay_budget, tx_power];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "network parameters must be finite".into(),
            ));
        }
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "BS density lambda must be positive, got {lambda}"
            )));
        }
        if alpha <= 2.0 {
            return Err(Error::InvalidParameter(format!(
                "path-loss exponent alpha must exceed 2 (delta = 2/alpha in (0,1)), got {alpha}"
            )));
        }
        if packet_bits <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "packet size K must be positive, got {packet_bits}"
            )));
        }
        if delay_budget <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delay budget N must be positive, got {delay_budget}"
            )));
        }
        if tx_power <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "transmit power must be positive, got {tx_power}"
            )));
        }
        Ok(NetworkParams {
            lambda,
            alpha,
            packet_bits,
            delay_budget,
            tx_power,
        })
    }

    /// Unit transmit power; power is irrelevant to SIR statistics anyway.
    pub fn with_unit_power(lambda: f64, alpha: f64, packet_bits: f64, delay_budget: f64) -> Result<Self> {
        Self::new(lambda, alpha, packet_bits, delay_budget, 1.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn packet_bits(&self) -> f64 {
        self.packet_bits
    }

    pub fn delay_budget(&self) -> f64 {
        self.delay_budget
    }

    pub fn tx_power(&self) -> f64 {
        self.tx_power
    }

    /// Characteristic path-loss exponent δ = 2/α of the interference
    /// integrals, guaranteed in (0, 1).
    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }

    /// Scale of the Rayleigh serving-distance law, 1/sqrt(2πλ).
    pub fn rayleigh_scale(&self) -> f64 {
        1.0 / (2.0 * std::f64::consts::PI * self.lambda).sqrt()
    }

    /// SIR threshold for decoding within `t` channel uses.
    pub fn theta(&self, t: f64) -> Result<f64> {
        theta_of_t(self.packet_bits, t)
    }

    /// ln θ_t, finite even where θ_t itself overflows f64.
    pub fn ln_theta(&self, t: f64) -> Result<f64> {
        let ratio = self.packet_bits / t;
        if t <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "packet time must be positive, got {t}"
            )));
        }
        if ratio > 60.0 {
            // 2^(K/t) - 1 is 2^(K/t) to beyond double precision.
            Ok(ratio * std::f64::consts::LN_2)
        } else {
            Ok(theta_of_t(self.packet_bits, t)?.ln())
        }
    }
}

/// SIR threshold θ_t = 2^(K/t) - 1 required to decode K bits in t channel
/// uses. Strictly decreasing in t; overflows to +∞ for very small t, which
/// downstream code folds into zero coverage.
pub fn theta_of_t(packet_bits: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "packet time must be positive, got {t}"
        )));
    }
    if packet_bits.is_nan() || packet_bits <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "packet size must be positive, got {packet_bits}"
        )));
    }
    Ok((packet_bits / t).exp2() - 1.0)
}

/// Interference seen by the typical user while it receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterferenceModel {
    /// Interferers transmit for the whole reception.
    ConstantInterference,
    /// Interferers stop once their own packet completes; modeled by
    /// independent thinning with i.i.d. packet-time marks.
    TimeVaryingItm,
}

impl std::fmt::Display for InterferenceModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InterferenceModel::ConstantInterference => write!(f, "ci"),
            InterferenceModel::TimeVaryingItm => write!(f, "tvi"),
        }
    }
}

/// Whether a computed moment is exact or a Jensen-type lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    LowerBound,
}

/// One raw moment of the conditional coverage probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub order: u32,
    pub value: f64,
    pub provenance: Provenance,
}

impl MomentSet {
    pub(crate) fn probability(order: u32, value: f64, provenance: Provenance) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidParameter(format!(
                "probability moment of order {order} out of [0, 1]: {value}"
            )));
        }
        Ok(MomentSet {
            order,
            value,
            provenance,
        })
    }
}

/// First two raw moments of the conditional mean packet time T_φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TphiMoments {
    /// E[T_φ], in channel uses; lies in (0, N].
    pub nu1: f64,
    /// E[T_φ²], in channel uses squared.
    pub nu2: f64,
    pub provenance: Provenance,
}
