//! Linear differential operators with polynomial coefficients and the
//! initial-value problem container.
//!
//! [`taylor_reference`] solves the Taylor-coefficient recurrence of the
//! problem directly. It shares the polynomial algebra with the tau solver but
//! none of its discrepancy or regularization machinery, and serves as the
//! reference solution in tests and in the analysis harness.

use num::Zero;
use thiserror::Error;

use crate::linalg::{solve_linear_system, LinearSystem, SolveError};
use crate::polynomial::{Coefficient, LinForm, Poly, Polynomial, Rational, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("operator has no nonzero coefficient polynomial")]
    InvalidOperator,
    #[error("invalid interval [{a}, {b}]: need a < b and a <= 0 <= b")]
    InvalidInterval { a: Box<Rational>, b: Box<Rational> },
    #[error("Taylor degree {requested} is below deg(T) = {initial_degree}")]
    DegreeBelowInitial { requested: usize, initial_degree: usize },
    #[error("problem is not well posed: {0}")]
    NotWellPosed(String),
}

impl From<SolveError> for OdeError {
    fn from(err: SolveError) -> Self {
        OdeError::NotWellPosed(err.to_string())
    }
}

/// `D[y] = sum_i coeffs[i] * y^(i) + inhomogeneous`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<Poly>,
    inhomogeneous: Poly,
}

impl DiffOperator {
    /// `coeffs[i]` multiplies the `i`-th derivative. Zero coefficients above
    /// the highest nonzero one are dropped.
    pub fn new(mut coeffs: Vec<Poly>, inhomogeneous: Poly) -> Result<Self, OdeError> {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(OdeError::InvalidOperator);
        }
        Ok(Self { coeffs, inhomogeneous })
    }

    /// Differential order `k`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coefficient(&self, derivative: usize) -> Option<&Poly> {
        self.coeffs.get(derivative)
    }

    pub fn leading(&self) -> &Poly {
        &self.coeffs[self.order()]
    }

    pub fn inhomogeneous(&self) -> &Poly {
        &self.inhomogeneous
    }

    /// `D[y]`, for plain or symbolic `y`.
    pub fn apply<C: Coefficient>(&self, y: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::<C>::lift(&self.inhomogeneous);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out = &out + &y.derivative(i).mul_poly(a);
        }
        out
    }

    /// The same operator without its inhomogeneous term.
    pub fn homogeneous_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            inhomogeneous: Poly::zero(),
        }
    }

    pub fn singularity_report(&self) -> RegularSingularityReport {
        let a_at_zero = self.leading().coeff(0);
        RegularSingularityReport {
            is_singular: a_at_zero.is_zero(),
            a_at_zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSingularityReport {
    pub a_at_zero: Rational,
    pub is_singular: bool,
}

/// `D[y] = 0` with Taylor data `T` at 0, approximation interval `[a, b]` and
/// target degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IvpProblem {
    pub operator: DiffOperator,
    pub initial: Poly,
    pub interval: (Rational, Rational),
    pub degree: usize,
}

impl IvpProblem {
    pub fn new(
        operator: DiffOperator,
        initial: Poly,
        interval: (Rational, Rational),
        degree: usize,
    ) -> Result<Self, OdeError> {
        let (a, b) = &interval;
        if a >= b || a > &Rational::zero() || b < &Rational::zero() {
            return Err(OdeError::InvalidInterval {
                a: Box::new(a.clone()),
                b: Box::new(b.clone()),
            });
        }
        Ok(Self {
            operator,
            initial,
            interval,
            degree,
        })
    }

    pub fn with_degree(&self, degree: usize) -> Self {
        Self {
            degree,
            ..self.clone()
        }
    }

    /// `k`.
    pub fn order(&self) -> usize {
        self.operator.order()
    }

    /// `l = deg(T)`; a zero `T` still fixes `y(0) = 0` and counts as degree 0.
    pub fn initial_degree(&self) -> usize {
        self.initial.degree().unwrap_or(0)
    }

    /// `s = max(l + 1, k)`: the derivative order carried by the unknown `u`.
    pub fn integration_order(&self) -> usize {
        (self.initial_degree() + 1).max(self.order())
    }
}

/// Coefficient forms of `x^0 .. x^upto` in `p`, zero forms included.
pub fn taylor_coeff_equations(p: &SymPoly, upto: usize) -> Vec<LinForm> {
    (0..=upto).map(|i| p.coeff(i)).collect()
}

/// Degree-`n` Taylor polynomial at 0 of the exact solution.
///
/// The unknown `u = y^(s)` is truncated at degree `n - s`. Non-trivial
/// Taylor equations of `D[T + V^s[u]]` are collected in increasing index
/// until they match the unknown count, and the resulting square system is
/// solved exactly.
pub fn taylor_reference(problem: &IvpProblem, n: usize) -> Result<Poly, OdeError> {
    let l = problem.initial_degree();
    if n < l && !problem.initial.is_zero() {
        return Err(OdeError::DegreeBelowInitial {
            requested: n,
            initial_degree: l,
        });
    }
    let s = problem.integration_order();
    if n < s {
        return Ok(problem.initial.truncate(n));
    }
    let p = n - s;
    let k = problem.order();

    // Unknowns above p only enter equations of index >= j + s - k; carry a
    // few of them so that any chosen equation touching one is detected
    // instead of being silently truncated.
    let mut slack = k + 1;
    loop {
        let u = SymPoly::generic(p + slack);
        let y = &SymPoly::lift(&problem.initial) + &u.integrate(s);
        let residual = problem.operator.apply(&y);

        let mut chosen = Vec::with_capacity(p + 1);
        let mut last_index = 0;
        for (i, eq) in residual.coeffs().iter().enumerate() {
            if eq.is_identically_zero() {
                continue;
            }
            chosen.push(eq.clone());
            last_index = i;
            if chosen.len() == p + 1 {
                break;
            }
        }
        if chosen.len() < p + 1 {
            return Err(OdeError::NotWellPosed(format!(
                "only {} non-trivial Taylor equations for {} unknowns",
                chosen.len(),
                p + 1
            )));
        }
        if last_index + k > p + slack + s {
            slack = last_index + k + 1 - p - s;
            continue;
        }
        if chosen.iter().any(|eq| eq.unknowns().any(|j| j > p)) {
            return Err(OdeError::NotWellPosed(
                "Taylor recurrence does not determine the leading coefficients".into(),
            ));
        }
        let system = LinearSystem::with_unknowns(chosen, 0..=p);
        let coef = solve_linear_system(&system)?;
        let u_p = SymPoly::generic(p)
            .substitute(&coef)
            .map_err(|e| OdeError::NotWellPosed(e.to_string()))?;
        return Ok(&problem.initial + &u_p.integrate(s));
    }
}
