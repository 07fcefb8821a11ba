//! Structured pass/fail output shared by all verification suites.

use std::fmt;

/// One named residual together with the tolerance it was checked against.
#[derive(Debug, Clone)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

/// Outcome of one verification suite: a list of residuals, each compared
/// against its tolerance, plus free-form metadata (λ, t_max, bound, ...).
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub residuals: Vec<Residual>,
    pub metadata: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), pass: true, residuals: Vec::new(), metadata: Vec::new() }
    }

    /// Record a residual; the report fails if it exceeds its tolerance or
    /// is not finite.
    pub fn record(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        if !(value.is_finite() && value <= tol) {
            self.pass = false;
        }
        self.residuals.push(Residual { name: name.into(), value, tol });
    }

    /// Record a boolean check as a 0/1 residual against tolerance 0.
    pub fn record_flag(&mut self, name: impl Into<String>, ok: bool) {
        self.record(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.metadata.push((key.into(), value.to_string()));
    }

    /// Mark the whole suite failed (used when a suite errors out).
    pub fn fail(&mut self, reason: impl fmt::Display) {
        self.pass = false;
        self.metadata.push(("error".into(), reason.to_string()));
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite
        )?;
        for r in &self.residuals {
            writeln!(f, "    {:<40} {:>12.3e}  (tol {:.1e})", r.name, r.value, r.tol)?;
        }
        for (k, v) in &self.metadata {
            writeln!(f, "    {k} = {v}")?;
        }
        Ok(())
    }
}
