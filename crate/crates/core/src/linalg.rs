//! Exact solution of square linear systems over the rationals.
//!
//! Rows are cleared of denominators and reduced with fraction-free
//! (Bareiss) elimination, so every intermediate entry is an integer minor of
//! the input matrix. Back substitution is done in rationals.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, Integer, One, Zero};
use thiserror::Error;

use crate::polynomial::{Assignment, LinForm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("system is singular: rank {rank} for {unknowns} unknowns, no unique solution")]
    Singular { rank: usize, unknowns: usize },
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("system is not square: {equations} non-trivial equations for {unknowns} unknowns")]
    Shape { equations: usize, unknowns: usize },
}

/// Equations `form = 0` over a declared set of unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub equations: Vec<LinForm>,
    pub unknowns: Vec<usize>,
}

impl LinearSystem {
    /// Unknowns are every index occurring in some equation.
    pub fn new(equations: Vec<LinForm>) -> Self {
        let unknowns: BTreeSet<usize> = equations.iter().flat_map(|e| e.unknowns()).collect();
        Self {
            equations,
            unknowns: unknowns.into_iter().collect(),
        }
    }

    /// System over an explicit unknown set; an unknown that occurs in no
    /// equation makes the system singular.
    pub fn with_unknowns(equations: Vec<LinForm>, unknowns: impl IntoIterator<Item = usize>) -> Self {
        let mut declared: BTreeSet<usize> = unknowns.into_iter().collect();
        declared.extend(equations.iter().flat_map(|e| e.unknowns()));
        Self {
            equations,
            unknowns: declared.into_iter().collect(),
        }
    }

    /// Indices of the identically-zero (`0 = 0`) equations.
    pub fn trivial_rows(&self) -> Vec<usize> {
        self.equations
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_identically_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.equations.len() - self.trivial_rows().len()
    }
}

/// Unique solution of a square system after discarding `0 = 0` rows.
pub fn solve_linear_system(system: &LinearSystem) -> Result<Assignment, SolveError> {
    let rows: Vec<&LinForm> = system
        .equations
        .iter()
        .filter(|e| !e.is_identically_zero())
        .collect();
    let n = system.unknowns.len();
    if rows.len() != n {
        return Err(SolveError::Shape {
            equations: rows.len(),
            unknowns: n,
        });
    }
    let column: BTreeMap<usize, usize> = system
        .unknowns
        .iter()
        .enumerate()
        .map(|(j, u)| (*u, j))
        .collect();

    let mut matrix: Vec<Vec<BigInt>> = rows.iter().map(|e| integer_row(e, &column, n)).collect();
    let pivots = bareiss(&mut matrix, n);

    // A zero coefficient row with a nonzero right-hand side cannot be satisfied.
    let rank = pivots.len();
    if matrix[rank..].iter().any(|row| !row[n].is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    if rank < n {
        return Err(SolveError::Singular { rank, unknowns: n });
    }

    let mut values = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(matrix[i][n].clone());
        for j in i + 1..n {
            if !matrix[i][j].is_zero() {
                acc -= Rational::from_integer(matrix[i][j].clone()) * &values[j];
            }
        }
        values[i] = acc / Rational::from_integer(matrix[i][i].clone());
    }
    Ok(system.unknowns.iter().copied().zip(values).collect())
}

/// Row of `form = 0` as integers `[a_0 .. a_{n-1} | rhs]` with `rhs = -constant`,
/// scaled by the lcm of all denominators.
fn integer_row(form: &LinForm, column: &BTreeMap<usize, usize>, n: usize) -> Vec<BigInt> {
    let mut row = vec![Rational::zero(); n + 1];
    for (index, coeff) in form.terms() {
        row[column[&index]] = coeff.clone();
    }
    row[n] = -form.constant_term().clone();
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.into_iter()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// In-place fraction-free elimination to row echelon form over the first
/// `cols` columns of an augmented matrix. Pivot: first row (lowest index) at
/// or below the current one with a nonzero entry in the column. Returns the
/// pivot columns; rows are permuted so pivot rows come first.
fn bareiss(matrix: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = matrix.len();
    let width = cols + 1;
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !matrix[i][c].is_zero()) else {
            continue;
        };
        matrix.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &matrix[r][c] * &matrix[i][j] - &matrix[i][c] * &matrix[r][j];
                debug_assert!((&v % &prev).is_zero());
                matrix[i][j] = v / &prev;
            }
            matrix[i][c] = BigInt::zero();
        }
        prev = matrix[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}
