//! Chebyshev polynomials of the first kind, the discrepancy polynomial with
//! symbolic tau coefficients, and the affine map of `[a, b]` onto `[-1, 1]`.

use num::{One, Zero};
use thiserror::Error;

use crate::polynomial::{LinForm, Poly, Rational, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("discrepancy range is empty: m = {m} is below p = {p}")]
    InvalidRange { p: usize, m: usize },
    #[error("invalid interval [{a}, {b}]: left end must be below right end")]
    InvalidInterval { a: Box<Rational>, b: Box<Rational> },
}

/// `z(x) = alpha*x + beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub alpha: Rational,
    pub beta: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        Self {
            alpha: Rational::one(),
            beta: Rational::zero(),
        }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.alpha * x + &self.beta
    }

    /// The inverse map, when `alpha != 0`.
    pub fn inverse(&self) -> Option<Self> {
        if self.alpha.is_zero() {
            return None;
        }
        let alpha = self.alpha.recip();
        let beta = -(&self.beta * &alpha);
        Some(Self { alpha, beta })
    }

    pub fn as_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.beta.clone(), self.alpha.clone()])
    }
}

/// Map taking `a` to -1 and `b` to 1.
pub fn interval_map(a: &Rational, b: &Rational) -> Result<AffineMap, BasisError> {
    if a >= b {
        return Err(BasisError::InvalidInterval {
            a: Box::new(a.clone()),
            b: Box::new(b.clone()),
        });
    }
    let width = b - a;
    Ok(AffineMap {
        alpha: Rational::from_integer(2.into()) / &width,
        beta: -(b + a) / width,
    })
}

/// `T_i` with exact integer coefficients, from the three-term recurrence.
pub fn chebyshev_t(i: usize) -> Poly {
    let mut prev = Poly::from_ints(&[1]);
    if i == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    let two_x = Poly::from_ints(&[0, 2]);
    for _ in 1..i {
        let next = &cur.mul_poly(&two_x) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Graded polynomial basis for the discrepancy term. Element `i` has exact
/// degree `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisId {
    #[default]
    ChebyshevFirstKind,
}

impl BasisId {
    pub fn element(self, i: usize) -> Poly {
        match self {
            BasisId::ChebyshevFirstKind => chebyshev_t(i),
        }
    }

    /// `sum_{j=p+1}^{m} c_j f_j(x)`; the tau unknowns share the index space of
    /// the `u_p` coefficients.
    pub fn discrepancy(self, p: usize, m: usize) -> Result<SymPoly, BasisError> {
        if m < p {
            return Err(BasisError::InvalidRange { p, m });
        }
        let mut out = SymPoly::zero();
        for j in p + 1..=m {
            let scaled = SymPoly::from_coeffs(
                self.element(j)
                    .coeffs()
                    .iter()
                    .map(|c| LinForm::term(j, c.clone()))
                    .collect(),
            );
            out = &out + &scaled;
        }
        Ok(out)
    }
}

/// Chebyshev discrepancy `sum_{j=p+1}^{m} c_j T_j(x)`.
pub fn build_discrepancy(p: usize, m: usize) -> Result<SymPoly, BasisError> {
    BasisId::ChebyshevFirstKind.discrepancy(p, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, rat, Assignment, Coefficient};

    #[test]
    fn t5_matches_trace() {
        assert_eq!(chebyshev_t(5), Poly::from_ints(&[0, 5, 0, -20, 0, 16]));
        assert_eq!(chebyshev_t(0), Poly::from_ints(&[1]));
    }

    #[test]
    fn chebyshev_matches_trigonometric_definition() {
        for i in 0..=12usize {
            let t = chebyshev_t(i);
            let coeffs: Vec<f64> = t
                .coeffs()
                .iter()
                .map(|c| c.numer().to_string().parse::<f64>().unwrap())
                .collect();
            for g in 0..21 {
                let x = -1.0 + 2.0 * g as f64 / 20.0;
                let value = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
                let expected = (i as f64 * x.acos()).cos();
                assert!((value - expected).abs() < 1e-12, "T_{i}({x})");
            }
        }
    }

    #[test]
    fn degree_leading_coefficient_and_parity() {
        for i in 1..=20usize {
            let t = chebyshev_t(i);
            assert_eq!(t.degree(), Some(i));
            assert_eq!(t.coeff(i), Rational::from_integer(num::BigInt::from(2).pow(i as u32 - 1)));
            let reflected = t.compose_affine(&AffineMap {
                alpha: int(-1),
                beta: int(0),
            });
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(reflected, t.scale(&sign));
        }
    }

    #[test]
    fn trace_discrepancy() {
        let e = build_discrepancy(1, 5).unwrap();
        // c5(16x^5 - 20x^3 + 5x) + c4(8x^4 - 8x^2 + 1) + c3(4x^3 - 3x) + c2(2x^2 - 1)
        let expect = |power: usize, terms: &[(usize, i64)]| {
            let mut form = LinForm::zero();
            for (i, c) in terms {
                form.add_assign_ref(&LinForm::term(*i, int(*c)));
            }
            assert_eq!(e.coeff(power), form, "x^{power}");
        };
        expect(0, &[(4, 1), (2, -1)]);
        expect(1, &[(5, 5), (3, -3)]);
        expect(2, &[(4, -8), (2, 2)]);
        expect(3, &[(5, -20), (3, 4)]);
        expect(4, &[(4, 8)]);
        expect(5, &[(5, 16)]);
        assert_eq!(e.degree(), Some(5));
    }

    #[test]
    fn empty_and_invalid_discrepancy() {
        assert!(build_discrepancy(3, 3).unwrap().is_zero());
        assert_eq!(build_discrepancy(4, 3), Err(BasisError::InvalidRange { p: 4, m: 3 }));
    }

    #[test]
    fn discrepancy_at_one_counts_terms() {
        for (p, m) in [(0, 4), (1, 5), (3, 9)] {
            let e = build_discrepancy(p, m).unwrap();
            let ones: Assignment = (p + 1..=m).map(|j| (j, int(1))).collect();
            let value = e.substitute(&ones).unwrap().eval(&int(1));
            assert_eq!(value, int((m - p) as i64));
        }
    }

    #[test]
    fn interval_maps() {
        assert_eq!(interval_map(&int(-1), &int(1)).unwrap(), AffineMap::identity());
        let unit = interval_map(&int(0), &int(1)).unwrap();
        assert_eq!(unit, AffineMap { alpha: int(2), beta: int(-1) });
        assert_eq!(unit.apply(&rat(1, 2)), int(0));
        assert!(matches!(
            interval_map(&int(1), &int(1)),
            Err(BasisError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn interval_map_endpoints_are_exact() {
        let ends = [(rat(-7, 3), rat(2, 5)), (int(-10), int(0)), (rat(-1, 9), rat(11, 4))];
        for (a, b) in ends {
            let z = interval_map(&a, &b).unwrap();
            assert_eq!(z.apply(&a), int(-1));
            assert_eq!(z.apply(&b), int(1));
        }
    }

    #[test]
    fn mapped_discrepancy_keeps_degree() {
        let z = interval_map(&rat(-1, 2), &int(3)).unwrap();
        let e = build_discrepancy(2, 6).unwrap().compose_affine(&z);
        assert_eq!(e.degree(), Some(6));
    }
}
