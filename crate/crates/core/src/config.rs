use crate::error::{Error, Result};

/// Numerical knobs shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Relative truncation tolerance for series and quadrature.
    pub rel_tol: f64,
    /// Cap on series terms or quadrature panels.
    pub max_terms: usize,
    /// Arguments closer than this to a pole are refused.
    pub pole_guard_radius: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: 1e-12,
            max_terms: 10_000,
            pole_guard_radius: 1e-8,
        }
    }
}

impl EvalConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        self.rel_tol = rel_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        self.max_terms = max_terms;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        if !(self.pole_guard_radius > 0.0 && self.pole_guard_radius.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "pole_guard_radius must be > 0, got {}",
                self.pole_guard_radius
            )));
        }
        Ok(())
    }
}
