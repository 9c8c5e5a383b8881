use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::{Coefficient, PolyError, Rational};

/// Affine form `constant + sum_i coeff_i * c_i` over indexed unknowns.
///
/// Terms with a zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinForm {
    constant: Rational,
    terms: BTreeMap<usize, Rational>,
}

/// Values for a set of unknowns, keyed by unknown index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    pub values: BTreeMap<usize, Rational>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, unknown: usize) -> Option<&Rational> {
        self.values.get(&unknown)
    }

    pub fn insert(&mut self, unknown: usize, value: Rational) {
        self.values.insert(unknown, value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<(usize, Rational)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        Self {
            values: iter.into_iter().collect(),
        }
    }
}

impl LinForm {
    pub fn constant(value: Rational) -> Self {
        Self {
            constant: value,
            terms: BTreeMap::new(),
        }
    }

    /// The bare unknown `c_index`.
    pub fn unknown(index: usize) -> Self {
        Self::term(index, Rational::one())
    }

    /// `coeff * c_index`.
    pub fn term(index: usize, coeff: Rational) -> Self {
        let mut form = Self::default();
        if !coeff.is_zero() {
            form.terms.insert(index, coeff);
        }
        form
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// Coefficient of `c_index`, zero when absent.
    pub fn coefficient(&self, index: usize) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn unknowns(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn has_unknowns(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    fn add_term(&mut self, index: usize, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// Value of the form under `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Rational, PolyError> {
        let mut value = self.constant.clone();
        for (index, coeff) in &self.terms {
            let x = assignment
                .get(*index)
                .ok_or(PolyError::IncompleteAssignment { unknown: *index })?;
            value += coeff * x;
        }
        Ok(value)
    }
}

impl std::ops::Add for LinForm {
    type Output = LinForm;

    fn add(mut self, rhs: LinForm) -> LinForm {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Zero for LinForm {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.is_identically_zero()
    }
}

impl Coefficient for LinForm {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        self.constant += &rhs.constant;
        for (index, coeff) in &rhs.terms {
            self.add_term(*index, coeff);
        }
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.constant -= &rhs.constant;
        for (index, coeff) in &rhs.terms {
            self.add_term(*index, &-coeff);
        }
    }

    fn scaled(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(i, c)| (*i, c * k)).collect(),
        }
    }

    fn negated(&self) -> Self {
        Self {
            constant: -&self.constant,
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (index, coeff) in self.terms.iter().rev() {
            write_signed(f, coeff, &format!("c{index}"), first)?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            if first {
                write!(f, "{}", self.constant)?;
            } else if self.constant.is_negative() {
                write!(f, " - {}", -&self.constant)?;
            } else {
                write!(f, " + {}", self.constant)?;
            }
        }
        Ok(())
    }
}

fn write_signed(f: &mut fmt::Formatter<'_>, coeff: &Rational, atom: &str, first: bool) -> fmt::Result {
    let magnitude = coeff.abs();
    match (first, coeff.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if magnitude.is_one() {
        write!(f, "{atom}")
    } else {
        write!(f, "{magnitude}*{atom}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, rat};

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut a = LinForm::term(3, rat(1, 2));
        a.sub_assign_ref(&LinForm::term(3, rat(1, 2)));
        assert!(a.is_identically_zero());
        assert_eq!(a, LinForm::zero());
    }

    #[test]
    fn scaling_by_zero_gives_zero_form() {
        let a = LinForm::term(1, int(4));
        assert!(a.scaled(&int(0)).is_identically_zero());
    }

    #[test]
    fn evaluate_reports_missing_unknown() {
        let mut form = LinForm::term(0, int(1));
        form.add_assign_ref(&LinForm::term(7, int(2)));
        let assignment: Assignment = [(0, int(5))].into_iter().collect();
        assert_eq!(
            form.evaluate(&assignment),
            Err(PolyError::IncompleteAssignment { unknown: 7 })
        );
    }

    #[test]
    fn display_lists_highest_unknown_first() {
        let mut form = LinForm::constant(int(0));
        form.add_assign_ref(&LinForm::unknown(4));
        form.add_assign_ref(&LinForm::term(2, int(-1)));
        form.add_assign_ref(&LinForm::term(0, rat(1, 2)));
        assert_eq!(form.to_string(), "c4 - c2 + 1/2*c0");
    }
}
