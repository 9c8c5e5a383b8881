//! Error measurement for tau-method approximations in software floating
//! point: sup and Chebyshev-weighted L2 norms, best polynomial approximation
//! (Remez exchange or Chebyshev truncation) and the optimality ratio of the
//! method's `k`-th derivative error to the best approximation error.
//!
//! Precision is carried by [`PrecisionConfig`] values; there is no global state.

pub mod approx;
pub mod hp;
pub mod norms;
pub mod ratio;
pub mod samples;

use thiserror::Error;

pub use approx::{best_approx_error, best_l2_approx_error, chebyshev_coefficients, ApproxMethod};
pub use hp::{to_f64, HpContext, Real};
pub use norms::{
    chebyshev_lobatto_nodes, sup_norm_error, weighted_l2_error, weighted_l2_norm, weighted_l2_norm_with_nodes,
    weighted_l2_samples,
};
pub use ratio::{convergence_table, optimality_ratio, NormKind, RatioRow};
pub use samples::FunctionSamples;

/// Smallest accepted working precision, that of an IEEE double.
pub const MIN_WORKING_BITS: usize = 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionConfig {
    pub working_bits: usize,
    pub grid_size: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_bits: 192,
            grid_size: 4097,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.working_bits < MIN_WORKING_BITS {
            return Err(AnalysisError::InvalidPrecision {
                bits: self.working_bits,
            });
        }
        if self.grid_size < 2 {
            return Err(AnalysisError::InvalidGrid { size: self.grid_size });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("no samples")]
    EmptySamples,
    #[error("grid has {grid} points but {values} values")]
    LengthMismatch { grid: usize, values: usize },
    #[error("grid points must be strictly increasing")]
    UnsortedGrid,
    #[error("working precision of {bits} bits is below the minimum of 53")]
    InvalidPrecision { bits: usize },
    #[error("grid size {size} is below the minimum of 2")]
    InvalidGrid { size: usize },
    #[error("interval must satisfy a < b")]
    InvalidInterval,
    #[error("operation requires samples on the Chebyshev-Lobatto grid")]
    NotChebyshevGrid,
    #[error("{samples} samples cannot support an exchange reference of {needed} points")]
    InsufficientSamples { samples: usize, needed: usize },
    #[error("exchange iteration found {runs} alternating extrema, needs {needed}")]
    RemezDegenerate { runs: usize, needed: usize },
    #[error("exchange iteration did not converge in {iterations} steps (level {level:e}, max error {max_error:e})")]
    RemezNonConvergence {
        iterations: usize,
        level: f64,
        max_error: f64,
    },
    #[error(
        "n = {n}: best approximation error {denominator:e} is at the {bits}-bit precision floor {floor:e}; increase the working precision"
    )]
    UnreliableDenominator {
        n: usize,
        denominator: f64,
        floor: f64,
        bits: usize,
    },
    #[error(transparent)]
    Tau(#[from] tau_core::TauError),
}
