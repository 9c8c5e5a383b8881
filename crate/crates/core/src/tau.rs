//! Lanczos tau-method with the discrepancy placed after regularization.
//!
//! For a problem `D[y] = 0`, Taylor data `T` and target degree `n`:
//!
//! 1. `k` = operator order, `l = deg T`, `s = max(l + 1, k)`, `p = n - s`.
//! 2. `y_n = T + V^s[u_p]` with `u_p = c_0 + ... + c_p x^p` symbolic.
//! 3. `r` = order of the zero of `D[y_n]` at 0; regularize `D_0 = D[y_n] / x^r`;
//!    `m = deg D_0`.
//! 4. Add `E_m(z(x)) = sum_{j=p+1}^{m} c_j T_j(z(x))`, where `z` maps the
//!    interval onto `[-1, 1]`.
//! 5. Require Taylor coefficients `0..=m` of `D_0 + E_m(z)` to vanish and
//!    solve the square system for `c_0 .. c_m` exactly.

use num::Zero;
use thiserror::Error;

use crate::basis::{build_discrepancy, chebyshev_t, interval_map, AffineMap, BasisError};
use crate::linalg::{solve_linear_system, LinearSystem, SolveError};
use crate::ode::{taylor_coeff_equations, IvpProblem};
use crate::polynomial::{Assignment, Poly, PolyError, Rational, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("degree n = {n} is too small: need n >= s = {min}")]
    DegreeTooSmall { n: usize, min: usize },
    #[error("regularized residual has degree {m} below p = {p}: {poly}")]
    MalformedRegularization { m: usize, p: usize, poly: SymPoly },
    #[error("D[y_n] vanishes identically; the operator annihilates every candidate")]
    DegenerateResidual,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Method parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauParams {
    pub k: usize,
    pub l: usize,
    pub s: usize,
    pub p: usize,
    pub r: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSolution {
    pub y_n: Poly,
    pub u_p: Poly,
    /// Values of `c_{p+1} .. c_m`.
    pub tau: Vec<Rational>,
    pub params: TauParams,
    pub residual_verified: bool,
    pub warnings: Vec<String>,
}

/// Every intermediate of one solve, in pipeline order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTrace {
    pub u_symbolic: SymPoly,
    pub y_symbolic: SymPoly,
    /// `D[y_n]` before regularization.
    pub residual: SymPoly,
    /// `D[y_n] / x^r`.
    pub regularized: SymPoly,
    /// `E_m` on `[-1, 1]`.
    pub discrepancy: SymPoly,
    pub map: AffineMap,
    /// `E_m(z(x))`.
    pub mapped_discrepancy: SymPoly,
    /// `D[y_n] / x^r + E_m(z(x))`.
    pub perturbed: SymPoly,
    pub system: LinearSystem,
    pub coefficients: Assignment,
    pub solution: TauSolution,
}

/// Runs the method and returns the solution.
pub fn tau_solve(problem: &IvpProblem) -> Result<TauSolution, TauError> {
    tau_trace(problem).map(|trace| trace.solution)
}

/// Runs the method and keeps every intermediate.
pub fn tau_trace(problem: &IvpProblem) -> Result<TauTrace, TauError> {
    let n = problem.degree;
    let k = problem.order();
    let l = problem.initial_degree();
    let s = problem.integration_order();
    if n < s {
        return Err(TauError::DegreeTooSmall { n, min: s });
    }
    let p = n - s;

    let mut warnings = Vec::new();
    let report = problem.operator.singularity_report();
    if !report.is_singular {
        warnings.push(format!(
            "leading coefficient does not vanish at 0 (A(0) = {}); the regular-singular optimality bound does not apply",
            report.a_at_zero
        ));
    }
    if n <= l + s {
        warnings.push(format!(
            "n = {n} does not exceed l + s = {}; the optimality bound is only established for larger n",
            l + s
        ));
    }

    let u_symbolic = SymPoly::generic(p);
    let y_symbolic = &SymPoly::lift(&problem.initial) + &u_symbolic.integrate(s);
    let residual = problem.operator.apply(&y_symbolic);
    let r = residual.deg_nul().map_err(|_| TauError::DegenerateResidual)?;
    let regularized = residual.div_x_pow(r)?;
    let m = regularized.degree().unwrap_or(0);
    if m < p {
        return Err(TauError::MalformedRegularization {
            m,
            p,
            poly: regularized,
        });
    }

    let discrepancy = build_discrepancy(p, m)?;
    let (a, b) = &problem.interval;
    let map = interval_map(a, b)?;
    let mapped_discrepancy = discrepancy.compose_affine(&map);
    let perturbed = &regularized + &mapped_discrepancy;

    let equations = taylor_coeff_equations(&perturbed, m);
    let system = LinearSystem::with_unknowns(equations, 0..=m);
    let coefficients = solve_linear_system(&system)?;

    let u_p = u_symbolic.substitute(&coefficients)?;
    let y_n = &problem.initial + &u_p.integrate(s);
    let tau = (p + 1..=m)
        .map(|j| coefficients.get(j).cloned().unwrap_or_else(Rational::zero))
        .collect();

    let params = TauParams { k, l, s, p, r, m };
    let mut solution = TauSolution {
        y_n,
        u_p,
        tau,
        params,
        residual_verified: false,
        warnings,
    };
    solution.residual_verified = residual_check(problem, &solution);

    Ok(TauTrace {
        u_symbolic,
        y_symbolic,
        residual,
        regularized,
        discrepancy,
        map,
        mapped_discrepancy,
        perturbed,
        system,
        coefficients,
        solution,
    })
}

/// Checks `D[y_n] / x^r + sum_j tau_j T_{p+j}(z(x)) == 0` using only the
/// numeric `y_n` and `tau` values.
pub fn residual_check(problem: &IvpProblem, sol: &TauSolution) -> bool {
    residual_diagnostic(problem, sol).is_none()
}

/// `None` when the residual identity holds, otherwise the reason it fails.
pub fn residual_diagnostic(problem: &IvpProblem, sol: &TauSolution) -> Option<String> {
    let TauParams { p, r, m, .. } = sol.params;
    if sol.tau.len() != m.saturating_sub(p) {
        return Some(format!("expected {} tau values, found {}", m.saturating_sub(p), sol.tau.len()));
    }
    let residual = problem.operator.apply(&sol.y_n);
    if !residual.is_zero() {
        let order = residual.deg_nul().unwrap_or(0);
        if order < r {
            return Some(format!("D[y_n] vanishes to order {order} at 0, below r = {r}"));
        }
    }
    let regularized = match residual.div_x_pow(r) {
        Ok(poly) => poly,
        Err(err) => return Some(err.to_string()),
    };
    let map = match interval_map(&problem.interval.0, &problem.interval.1) {
        Ok(map) => map,
        Err(err) => return Some(err.to_string()),
    };
    let perturbation = sol
        .tau
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (j, t)| {
            &acc + &chebyshev_t(p + 1 + j).compose_affine(&map).scale(t)
        });
    let total = &regularized + &perturbation;
    if total.is_zero() {
        None
    } else {
        Some(format!("residual is not identically zero: {total}"))
    }
}
