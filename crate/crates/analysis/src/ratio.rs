//! Optimality ratio `||y^(k) - y_n^(k)|| / E[n - k, y^(k)]`.

use rayon::prelude::*;
use tau_core::{tau_solve, IvpProblem};

use crate::approx::{best_approx_error, best_l2_approx_error, ApproxMethod};
use crate::hp::{to_f64, HpContext};
use crate::norms::{sup_norm_error, weighted_l2_error};
use crate::samples::FunctionSamples;
use crate::{AnalysisError, PrecisionConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    #[default]
    Sup,
    WeightedL2,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Sup => "sup",
            NormKind::WeightedL2 => "weighted-l2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub norm_kind: NormKind,
}

/// One row for degree `n`. `reference_kth` samples the exact solution's
/// `k`-th derivative, `k` the operator order.
///
/// A numerator at the arithmetic's resolution gives ratio 0 regardless of
/// the denominator; otherwise a denominator at the working-precision floor
/// is an error.
pub fn optimality_ratio(
    problem: &IvpProblem,
    reference_kth: &FunctionSamples,
    n: usize,
    norm_kind: NormKind,
    cfg: PrecisionConfig,
) -> Result<RatioRow, AnalysisError> {
    cfg.validate()?;
    let solution = tau_solve(&problem.with_degree(n))?;
    let k = problem.order();
    let derivative = solution.y_n.derivative(k);
    let degree = n - k;
    let (numerator, denominator) = match norm_kind {
        NormKind::Sup => (
            sup_norm_error(reference_kth, &derivative, cfg)?,
            best_approx_error(reference_kth, degree, ApproxMethod::Remez, cfg)?,
        ),
        NormKind::WeightedL2 => (
            weighted_l2_error(reference_kth, &derivative, cfg)?,
            best_l2_approx_error(reference_kth, degree, cfg)?,
        ),
    };
    let hp = HpContext::new(cfg.working_bits);
    let scale = reference_kth.scale(&hp);
    let floor = hp.mul(&scale, &hp.floor(20));
    let ratio = if numerator <= hp.mul(&scale, &hp.resolution(20)) {
        0.0
    } else if denominator <= floor {
        return Err(AnalysisError::UnreliableDenominator {
            n,
            denominator: to_f64(&denominator),
            floor: to_f64(&floor),
            bits: cfg.working_bits,
        });
    } else {
        to_f64(&hp.div(&numerator, &denominator))
    };
    Ok(RatioRow {
        n,
        numerator: to_f64(&numerator),
        denominator: to_f64(&denominator),
        ratio,
        norm_kind,
    })
}

/// Rows for every `n`, computed in parallel and returned in input order.
/// A failing row does not affect the others.
pub fn convergence_table(
    problem: &IvpProblem,
    reference_kth: &FunctionSamples,
    ns: &[usize],
    norm_kind: NormKind,
    cfg: PrecisionConfig,
) -> Vec<Result<RatioRow, AnalysisError>> {
    ns.par_iter()
        .map(|&n| optimality_ratio(problem, reference_kth, n, norm_kind, cfg))
        .collect()
}
