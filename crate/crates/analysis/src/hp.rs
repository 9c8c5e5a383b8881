//! Working-precision arithmetic on top of `astro-float`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num::{BigInt, ToPrimitive};
use tau_core::{Poly, Rational};

pub type Real = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

/// Precision plus the constant cache `astro-float` needs for `pi` and trig.
/// One context per thread; never shared.
pub struct HpContext {
    bits: usize,
    // astro-float works in whole 64-bit words and yields NaN below one word
    prec: usize,
    consts: Consts,
}

impl HpContext {
    pub fn new(bits: usize) -> Self {
        Self {
            bits,
            prec: bits.next_multiple_of(64),
            consts: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn int(&self, v: i64) -> Real {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn float(&self, v: f64) -> Real {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn integer(&mut self, v: &BigInt) -> Real {
        match v.to_i64() {
            Some(small) => self.int(small),
            None => BigFloat::parse(&v.to_string(), Radix::Dec, self.prec, RM, &mut self.consts),
        }
    }

    pub fn rational(&mut self, r: &Rational) -> Real {
        let n = self.integer(r.numer());
        let d = self.integer(r.denom());
        self.div(&n, &d)
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        a.sqrt(self.prec, RM)
    }

    pub fn cos(&mut self, a: &Real) -> Real {
        a.cos(self.prec, RM, &mut self.consts)
    }

    pub fn sin(&mut self, a: &Real) -> Real {
        a.sin(self.prec, RM, &mut self.consts)
    }

    pub fn exp(&mut self, a: &Real) -> Real {
        a.exp(self.prec, RM, &mut self.consts)
    }

    pub fn pi(&mut self) -> Real {
        self.consts.pi(self.prec, RM)
    }

    /// `2^e`, exact.
    pub fn pow2(&self, e: i32) -> Real {
        self.float(2f64.powi(e))
    }

    /// Relative resolution floor `2^(slack - bits)`.
    pub fn floor(&self, slack: i32) -> Real {
        self.pow2(slack - self.bits as i32)
    }

    /// `2^(slack - p)` for the precision `p` arithmetic actually carries.
    pub fn resolution(&self, slack: i32) -> Real {
        self.pow2(slack - self.prec as i32)
    }

    pub fn poly_coeffs(&mut self, p: &Poly) -> Vec<Real> {
        p.coeffs().iter().map(|c| self.rational(c)).collect()
    }

    pub fn horner(&self, coeffs: &[Real], x: &Real) -> Real {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

pub fn to_f64(x: &Real) -> f64 {
    format!("{x}").parse().unwrap_or(f64::NAN)
}

pub(crate) fn max_abs<'a>(values: impl IntoIterator<Item = &'a Real>) -> Option<Real> {
    values.into_iter().map(Real::abs).reduce(|a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tau_core::polynomial::rat;

    #[test]
    fn rationals_and_large_integers_convert() {
        let mut hp = HpContext::new(192);
        assert_eq!(to_f64(&hp.rational(&rat(-48, 7))), -48.0 / 7.0);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = Rational::new(big.clone(), big * 3);
        let third = hp.rational(&r);
        let err = hp.sub(&third, &hp.div(&hp.int(1), &hp.int(3))).abs();
        assert!(err < hp.floor(4));
    }

    #[test]
    fn pi_and_trig() {
        let mut hp = HpContext::new(192);
        let pi = hp.pi();
        let c = hp.cos(&pi);
        assert!(hp.add(&c, &hp.int(1)).abs() < hp.floor(4));
        let half = hp.div(&pi, &hp.int(6));
        let s = hp.sin(&half);
        assert!(hp.sub(&s, &hp.float(0.5)).abs() < hp.floor(4));
    }

    #[test]
    fn horner_matches_exact_evaluation() {
        let mut hp = HpContext::new(128);
        let p = Poly::from_coeffs(vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(-2, 7)]);
        let coeffs = hp.poly_coeffs(&p);
        let v = hp.horner(&coeffs, &hp.int(1));
        assert!((to_f64(&v) - 5.0 / 7.0).abs() < 1e-15);
    }
}
