use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::{Assignment, Coefficient, LinForm, Poly, PolyError, Rational, SymPoly};
use crate::basis::AffineMap;

/// Dense univariate polynomial, coefficients indexed by power of `x`,
/// lowest first.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: C, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = c;
        Self { coeffs }
    }

    /// Embeds a rational polynomial into this coefficient ring.
    pub fn lift(p: &Poly) -> Self {
        Self {
            coeffs: p.coeffs.iter().cloned().map(C::from_rational).collect(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(C::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^power`, zero beyond the degree.
    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).cloned().unwrap_or_else(C::zero)
    }

    /// Degree, or `None` for the zero polynomial. `None` orders below every
    /// `Some(d)`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scaled(k)).collect())
    }

    /// Product with a rational polynomial.
    pub fn mul_poly(&self, rhs: &Poly) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, b) in rhs.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&a.scaled(b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `x^power`.
    pub fn shift_up(&self, power: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Order-th derivative in `x`.
    pub fn derivative(&self, order: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..order {
            if p.is_zero() {
                break;
            }
            p = Self::from_coeffs(
                p.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| c.scaled(&Rational::from_integer(j.into())))
                    .collect(),
            );
        }
        p
    }

    /// `times`-fold integration from 0 to `x`; every antiderivative vanishes at
    /// the origin.
    pub fn integrate(&self, times: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..times {
            if p.is_zero() {
                break;
            }
            let mut coeffs = Vec::with_capacity(p.coeffs.len() + 1);
            coeffs.push(C::zero());
            for (j, c) in p.coeffs.iter().enumerate() {
                coeffs.push(c.scaled(&Rational::new(One::one(), (j + 1).into())));
            }
            p = Self::from_coeffs(coeffs);
        }
        p
    }

    /// Substitutes `x <- alpha*x + beta` and expands.
    pub fn compose_affine(&self, map: &AffineMap) -> Self {
        let inner = Poly::from_coeffs(vec![map.beta.clone(), map.alpha.clone()]);
        let mut out = Self::zero();
        for c in self.coeffs.iter().rev() {
            out = &out.mul_poly(&inner) + &Self::constant(c.clone());
        }
        out
    }

    /// Order of the zero at `x = 0`: index of the first nonzero coefficient.
    pub fn deg_nul(&self) -> Result<usize, PolyError> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(PolyError::ZeroPolynomialOrder)
    }

    /// Exact division by `x^r`.
    pub fn div_x_pow(&self, r: usize) -> Result<Self, PolyError> {
        if r == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let order = self.deg_nul()?;
        if order < r {
            return Err(PolyError::NotDivisible { r, order });
        }
        Ok(Self {
            coeffs: self.coeffs[r..].to_vec(),
        })
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }
}

impl Poly {
    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Builds a polynomial from integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, point: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * point + c)
    }
}

impl SymPoly {
    /// The polynomial `c_0 + c_1 x + ... + c_p x^p` with symbolic coefficients.
    pub fn generic(degree: usize) -> Self {
        Self::generic_from(0, degree)
    }

    /// `c_first x^0 + c_{first+1} x + ...` up to `x^degree`.
    pub fn generic_from(first_unknown: usize, degree: usize) -> Self {
        Self::from_coeffs((0..=degree).map(|j| LinForm::unknown(first_unknown + j)).collect())
    }

    /// Every unknown index that occurs in some coefficient.
    pub fn unknowns(&self) -> BTreeSet<usize> {
        self.coeffs.iter().flat_map(|c| c.unknowns()).collect()
    }

    pub fn has_unknowns(&self) -> bool {
        self.coeffs.iter().any(LinForm::has_unknowns)
    }

    /// Extracts the rational polynomial when no unknowns occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.has_unknowns() {
            return None;
        }
        Some(Poly::from_coeffs(
            self.coeffs.iter().map(|c| c.constant_term().clone()).collect(),
        ))
    }

    /// Collapses every coefficient under `assignment`.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.evaluate(assignment))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Product of two symbolic polynomials; at most one may carry unknowns.
    pub fn try_mul(&self, rhs: &SymPoly) -> Result<SymPoly, PolyError> {
        if let Some(p) = rhs.to_poly() {
            Ok(self.mul_poly(&p))
        } else if let Some(p) = self.to_poly() {
            Ok(rhs.mul_poly(&p))
        } else {
            Err(PolyError::Nonlinear)
        }
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            a.add_assign_ref(b);
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign_ref(b);
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            coeffs: self.coeffs.iter().map(C::negated).collect(),
        }
    }
}

impl<C: Coefficient> Mul<&Poly> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Poly) -> Polynomial<C> {
        self.mul_poly(rhs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: Self) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, rat};

    /// `(power, [(unknown, coefficient)], constant)`
    type Term<'a> = (usize, &'a [(usize, Rational)], Rational);

    fn sym(terms: &[Term]) -> SymPoly {
        let mut p = SymPoly::zero();
        for (power, unknowns, constant) in terms {
            let mut form = LinForm::constant(constant.clone());
            for (i, c) in unknowns.iter() {
                form.add_assign_ref(&LinForm::term(*i, c.clone()));
            }
            p = &p + &SymPoly::monomial(form, *power);
        }
        p
    }

    /// The trace's symbolic y_n = x^2 + (1/6) c0 x^3 + (1/24) c1 x^4.
    fn trace_yn() -> SymPoly {
        sym(&[
            (2, &[], int(1)),
            (3, &[(0, rat(1, 6))], int(0)),
            (4, &[(1, rat(1, 24))], int(0)),
        ])
    }

    /// The trace's Dn before regularization.
    fn trace_dn() -> SymPoly {
        sym(&[
            (2, &[(0, rat(1, 2))], int(0)),
            (3, &[(1, rat(1, 3))], int(0)),
            (5, &[], int(4)),
            (6, &[(0, rat(2, 3))], int(0)),
            (7, &[(1, rat(1, 6))], int(0)),
        ])
    }

    #[test]
    fn scale_then_shift_gives_trace_term() {
        let p = Poly::monomial(int(1), 2).scale(&int(4)).mul_poly(&Poly::monomial(int(1), 3));
        assert_eq!(p, Poly::monomial(int(4), 5));
    }

    #[test]
    fn unknown_times_plain_poly() {
        let c0x = SymPoly::monomial(LinForm::unknown(0), 1);
        let out = c0x.try_mul(&SymPoly::lift(&Poly::monomial(int(1), 2))).unwrap();
        assert_eq!(out, SymPoly::monomial(LinForm::unknown(0), 3));
    }

    #[test]
    fn product_of_two_symbolic_polys_is_rejected() {
        let a = SymPoly::generic(1);
        let b = SymPoly::generic_from(5, 0);
        assert_eq!(a.try_mul(&b), Err(PolyError::Nonlinear));
    }

    #[test]
    fn second_derivative_of_trace_yn() {
        let expected = sym(&[
            (0, &[], int(2)),
            (1, &[(0, int(1))], int(0)),
            (2, &[(1, rat(1, 2))], int(0)),
        ]);
        assert_eq!(trace_yn().derivative(2), expected);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(Poly::constant(rat(3, 5)).derivative(1).is_zero());
    }

    #[test]
    fn triple_integration_matches_trace() {
        let u = SymPoly::generic(1);
        let expected = sym(&[(3, &[(0, rat(1, 6))], int(0)), (4, &[(1, rat(1, 24))], int(0))]);
        assert_eq!(u.integrate(3), expected);
        assert_eq!(u.integrate(0), u);
    }

    #[test]
    fn deg_nul_of_trace_dn() {
        assert_eq!(trace_dn().deg_nul(), Ok(2));
        assert_eq!(Poly::from_ints(&[1, 1]).deg_nul(), Ok(0));
        assert_eq!(Poly::zero().deg_nul(), Err(PolyError::ZeroPolynomialOrder));
    }

    #[test]
    fn regularized_trace_dn() {
        let expected = sym(&[
            (0, &[(0, rat(1, 2))], int(0)),
            (1, &[(1, rat(1, 3))], int(0)),
            (3, &[], int(4)),
            (4, &[(0, rat(2, 3))], int(0)),
            (5, &[(1, rat(1, 6))], int(0)),
        ]);
        assert_eq!(trace_dn().div_x_pow(2).unwrap(), expected);
        assert_eq!(trace_dn().div_x_pow(0).unwrap(), trace_dn());
        assert_eq!(
            trace_dn().div_x_pow(3),
            Err(PolyError::NotDivisible { r: 3, order: 2 })
        );
    }

    #[test]
    fn substituting_trace_coefficients() {
        let u = SymPoly::generic(1);
        let coef: Assignment = [(0, int(0)), (1, rat(-48, 7))].into_iter().collect();
        assert_eq!(u.substitute(&coef).unwrap(), Poly::monomial(rat(-48, 7), 1));
        let plain = Poly::from_ints(&[1, 0, 3]);
        assert_eq!(SymPoly::lift(&plain).substitute(&Assignment::new()).unwrap(), plain);
    }

    #[test]
    fn evaluation_of_solved_example() {
        let y4 = Poly::from_coeffs(vec![int(0), int(0), int(1), int(0), rat(-2, 7)]);
        assert_eq!(y4.eval(&int(1)), rat(5, 7));
        assert_eq!(y4.eval(&int(0)), y4.coeff(0));
    }

    #[test]
    fn compose_t2_with_unit_interval_map() {
        let t2 = Poly::from_ints(&[-1, 0, 2]);
        let map = AffineMap {
            alpha: int(2),
            beta: int(-1),
        };
        let composed = t2.compose_affine(&map);
        assert_eq!(composed, Poly::from_ints(&[1, -8, 8]));
        for x in [int(0), rat(1, 2), int(1), rat(3, 7)] {
            let z = &x * int(2) - int(1);
            assert_eq!(composed.eval(&x), t2.eval(&z));
        }
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert!(Poly::zero().degree() < Some(0));
        assert_eq!(Poly::from_coeffs(vec![int(1), int(0), int(0)]).degree(), Some(0));
    }

    #[test]
    fn embedding_then_extracting_is_identity() {
        let p = Poly::from_coeffs(vec![rat(1, 3), int(0), rat(-5, 2)]);
        assert_eq!(SymPoly::lift(&p).to_poly(), Some(p));
        assert_eq!(SymPoly::generic(2).to_poly(), None);
    }
}
