//! Comparison report between analytic and empirical curves.

/// Sup-deviation of one analytic/empirical curve pair on the common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComparison {
    pub label: String,
    pub sup_deviation: f64,
    /// Pass threshold; absent entries are informational only.
    pub tolerance: Option<f64>,
}

impl CurveComparison {
    pub fn passed(&self) -> bool {
        match self.tolerance {
            Some(tol) => self.sup_deviation <= tol,
            None => true,
        }
    }
}

/// One scalar spot value checked against a window.
#[derive(Debug, Clone, PartialEq)]
pub struct SpotCheck {
    pub label: String,
    pub value: f64,
    pub low: f64,
    pub high: f64,
}

impl SpotCheck {
    pub fn passed(&self) -> bool {
        self.value >= self.low && self.value <= self.high
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparisonReport {
    pub comparisons: Vec<CurveComparison>,
    pub spot_checks: Vec<SpotCheck>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(CurveComparison::passed)
            && self.spot_checks.iter().all(SpotCheck::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("curve comparisons (sup deviation on common grid)\n");
        for c in &self.comparisons {
            let verdict = match c.tolerance {
                Some(tol) if c.sup_deviation <= tol => format!("<= {tol:.3}  pass"),
                Some(tol) => format!(">  {tol:.3}  FAIL"),
                None => "(informational)".to_string(),
            };
            s.push_str(&format!("  {:<42} {:>8.4}  {}\n", c.label, c.sup_deviation, verdict));
        }
        if !self.spot_checks.is_empty() {
            s.push_str("spot values\n");
            for c in &self.spot_checks {
                let verdict = if c.passed() { "pass" } else { "FAIL" };
                s.push_str(&format!(
                    "  {:<42} {:>8.4}  in [{:.4}, {:.4}]  {}\n",
                    c.label, c.value, c.low, c.high, verdict
                ));
            }
        }
        s.push_str(if self.passed() {
            "result: PASS\n"
        } else {
            "result: FAIL\n"
        });
        s
    }
}
