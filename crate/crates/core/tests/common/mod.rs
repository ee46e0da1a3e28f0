//! Shared oracles for the integration tests.
//!
//! The integrators here are deliberately from a different family than the
//! library's Gauss–Kronrod scheme (composite and adaptive Simpson), so
//! agreement between the two is a genuine cross-check rather than a
//! repetition of the same arithmetic.

#![allow(dead_code)]

/// Composite Simpson rule with a fixed panel count.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x1 = x0 + h;
        let xm = 0.5 * (x0 + x1);
        acc += (f(x0) + 4.0 * f(xm) + f(x1)) * h / 6.0;
    }
    acc
}

/// Adaptive Simpson with interval-halving error control.
pub fn adaptive_simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rule<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        let m = 0.5 * (a + b);
        (f(a) + 4.0 * f(m) + f(b)) * (b - a) / 6.0
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = rule(f, a, m);
        let right = rule(f, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let whole = rule(&f, a, b);
    recurse(&f, a, b, whole, tol, 60)
}

/// Mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let n = samples.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in samples.iter().enumerate() {
        let c = cdf(x);
        let hi = (i as f64 + 1.0) / n - c;
        let lo = c - i as f64 / n;
        d = d.max(hi.max(lo));
    }
    d
}

/// Low-discrepancy sequence on (0, 1) for deterministic "random" probes.
pub fn golden_sequence(i: usize) -> f64 {
    const PHI_FRAC: f64 = 0.618_033_988_749_894_9;
    let v = ((i + 1) as f64 * PHI_FRAC).fract();
    v.clamp(1e-12, 1.0 - 1e-12)
}
