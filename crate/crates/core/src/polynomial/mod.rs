//! Exact scalars, dense univariate polynomials, and polynomials whose
//! coefficients are affine forms in a set of indexed unknowns.
//!
//! [`Poly`] and [`SymPoly`] are the same dense container instantiated over two
//! coefficient rings: plain rationals and [`LinForm`]s. Every operation the
//! tau-method needs (repeated integration, differentiation, affine
//! substitution, zero-order extraction, division by a power of `x`) is written
//! once over the [`Coefficient`] trait.

mod dense;
mod linform;

pub use dense::Polynomial;
pub use linform::{Assignment, LinForm};

use thiserror::Error;

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Dense polynomial in `x` with rational coefficients.
pub type Poly = Polynomial<Rational>;

/// Dense polynomial in `x` whose coefficients are affine forms in the unknowns
/// `c0, c1, ...`.
pub type SymPoly = Polynomial<LinForm>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("product of two polynomials that both carry unknowns is not linear")]
    Nonlinear,
    #[error("order of zero at x = 0 is undefined for the zero polynomial")]
    ZeroPolynomialOrder,
    #[error("cannot divide by x^{r}: the polynomial only vanishes to order {order} at x = 0")]
    NotDivisible { r: usize, order: usize },
    #[error("assignment has no value for unknown c{unknown}")]
    IncompleteAssignment { unknown: usize },
}

/// Scalar ring for [`Polynomial`]: a rational vector space with an embedding
/// of the rationals.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug + num::Zero {
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn scaled(&self, k: &Rational) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn scaled(&self, k: &Rational) -> Self {
        self * k
    }

    fn negated(&self) -> Self {
        -self
    }
}

/// Shorthand for building a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(value.into())
}
