use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Eigenequation residual at which an iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Damping θ ∈ (0, 1] of the fixed-point update.
    pub damping: f64,
    /// Random interior starts of the p < r ascent.
    pub restarts: usize,
    pub seed: u64,
    /// Largest n for which the p < r sub-hypergraph search is exhaustive.
    pub subgraph_limit: usize,
    /// Random starts per induced sub-hypergraph in the certificate search,
    /// on top of the uniform start.
    pub subset_starts: usize,
    /// Start the p ≥ r iteration from a seeded random positive vector
    /// instead of the uniform one.
    pub random_init: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: 100_000,
            damping: 1.0,
            restarts: 32,
            seed: 0,
            subgraph_limit: 20,
            subset_starts: 4,
            random_init: false,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidValue { what: "tol", requirement: "positive", value: self.tol });
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidValue { what: "damping", requirement: "in (0, 1]", value: self.damping });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidValue { what: "max_iter", requirement: "at least 1", value: 0.0 });
        }
        Ok(())
    }
}
