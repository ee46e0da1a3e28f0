//! Monotone cubic Hermite interpolation (Fritsch–Carlson).
//!
//! Used to tabulate slowly-varying monotone functions (mark CDF, activity
//! fraction, interference factor tables) once and evaluate them cheaply
//! inside Monte Carlo loops. Shape-preserving: interpolating monotone data
//! yields a monotone interpolant.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    deriv: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant over strictly ascending abscissae.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::InvalidParameter(
                "interpolation needs at least two matched (x, y) pairs".into(),
            ));
        }
        for w in x.windows(2) {
            if w[0] >= w[1] || w[0].is_nan() || w[1].is_nan() {
                return Err(Error::InvalidParameter(
                    "interpolation abscissae must be strictly ascending".into(),
                ));
            }
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "interpolation data must be finite".into(),
            ));
        }

        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let s: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut d = vec![0.0; n];
        d[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), s[0], *s.get(1).unwrap_or(&s[0]));
        d[n - 1] = endpoint_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            s[n - 2],
            if n >= 3 { s[n - 3] } else { s[n - 2] },
        );
        for i in 1..n - 1 {
            if s[i - 1] * s[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                // Weighted harmonic mean of adjacent secants (Fritsch–Carlson).
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }

        Ok(MonotoneCubic { x, y, deriv: d })
    }

    /// Evaluates the interpolant; clamps to the end values outside the grid.
    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            return self.y[0];
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1];
        }
        // Index of the last knot <= xq.
        let i = self.x.partition_point(|&v| v <= xq) - 1;
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[i] + h10 * h * self.deriv[i] + h01 * self.y[i + 1] + h11 * h * self.deriv[i + 1]
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    pub fn first_y(&self) -> f64 {
        self.y[0]
    }

    pub fn last_y(&self) -> f64 {
        *self.y.last().unwrap()
    }
}

// One-sided three-point estimate, clipped so the interpolant stays monotone
// near the boundary.
fn endpoint_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}
