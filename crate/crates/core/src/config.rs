//! Numerical tolerances shared by every module.
//!
//! Criteria comparisons are tolerance-sensitive, so all thresholds live in one
//! record that can be printed alongside results.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Schmidt coefficients above this count toward the Schmidt rank.
    pub schmidt_rank: f64,
    /// Maximum Hermiticity deviation accepted by `hermitian_eig`.
    pub hermitian: f64,
    /// Maximum |norm^2 - 1| accepted for pure states.
    pub normalization: f64,
    /// Trace, Hermiticity and positivity slack for density matrices.
    pub density_trace: f64,
    pub density_hermitian: f64,
    pub density_min_eigenvalue: f64,
    /// Relative slack at the endpoints of the admissible t-interval.
    pub t_endpoint_slack: f64,
    /// Pass threshold for the MUM defining relations.
    pub mum_relations: f64,
    /// Absolute margin on ||J|| - (1 + kappa) before declaring entanglement.
    pub verdict: f64,
    /// Largest matrix side produced by `kron`.
    pub max_dimension: usize,
    /// Iteration cap for SVD and eigen solvers.
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            schmidt_rank: 1e-9,
            hermitian: 1e-10,
            normalization: 1e-8,
            density_trace: 1e-12,
            density_hermitian: 1e-12,
            density_min_eigenvalue: 1e-10,
            t_endpoint_slack: 1e-12,
            mum_relations: 1e-9,
            verdict: 1e-9,
            max_dimension: 4096,
            max_iterations: 10_000,
        }
    }
}
