//! Best polynomial approximation error `E[d, f]` of sampled functions.

use crate::hp::{max_abs, HpContext, Real};
use crate::samples::FunctionSamples;
use crate::{AnalysisError, PrecisionConfig};

const MAX_EXCHANGES: usize = 100;
// Iteration target; levels within the required agreement are accepted at the cap.
const LEVEL_TARGET: f64 = 1e-10;
const LEVEL_AGREEMENT: f64 = 1e-6;
/// Consecutive negligible coefficients that end a Chebyshev expansion.
const TAIL_RUN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxMethod {
    /// Exchange iteration on the sample grid.
    #[default]
    Remez,
    /// `sum_{j > d} |a_j|` of the Chebyshev expansion; an upper bound.
    ChebTruncation,
}

/// Best sup-norm approximation error by polynomials of degree `degree`.
pub fn best_approx_error(
    f: &FunctionSamples,
    degree: usize,
    method: ApproxMethod,
    cfg: PrecisionConfig,
) -> Result<Real, AnalysisError> {
    cfg.validate()?;
    if f.is_empty() {
        return Err(AnalysisError::EmptySamples);
    }
    let mut hp = HpContext::new(cfg.working_bits);
    match method {
        ApproxMethod::Remez => remez(f, degree, &mut hp),
        ApproxMethod::ChebTruncation => {
            let coeffs = chebyshev_coefficients_in(f, &mut hp)?;
            Ok(tail_sum(&coeffs, degree, &hp))
        }
    }
}

/// Best approximation error in the Chebyshev-weighted L2 norm:
/// `sqrt((b-a)/2 * pi/2 * sum_{j > d} a_j^2)`.
pub fn best_l2_approx_error(f: &FunctionSamples, degree: usize, cfg: PrecisionConfig) -> Result<Real, AnalysisError> {
    cfg.validate()?;
    let mut hp = HpContext::new(cfg.working_bits);
    let coeffs = chebyshev_coefficients_in(f, &mut hp)?;
    let sum = coeffs
        .iter()
        .skip(degree + 1)
        .fold(hp.zero(), |acc, a| hp.add(&acc, &hp.mul(a, a)));
    let a = hp.rational(&f.interval.0);
    let b = hp.rational(&f.interval.1);
    let half = hp.div(&hp.sub(&b, &a), &hp.int(2));
    let pi = hp.pi();
    let factor = hp.mul(&half, &hp.div(&pi, &hp.int(2)));
    Ok(hp.sqrt(&hp.mul(&factor, &sum)))
}

/// Chebyshev coefficients `a_0, a_1, ...` of the sampled function in `z`,
/// computed until they fall below the precision floor.
pub fn chebyshev_coefficients(f: &FunctionSamples, cfg: PrecisionConfig) -> Result<Vec<Real>, AnalysisError> {
    cfg.validate()?;
    let mut hp = HpContext::new(cfg.working_bits);
    chebyshev_coefficients_in(f, &mut hp)
}

fn chebyshev_coefficients_in(f: &FunctionSamples, hp: &mut HpContext) -> Result<Vec<Real>, AnalysisError> {
    if f.is_empty() {
        return Err(AnalysisError::EmptySamples);
    }
    if !f.is_chebyshev_lobatto() || f.len() < 2 {
        return Err(AnalysisError::NotChebyshevGrid);
    }
    let z = f.z();
    let last = f.len() - 1;
    let negligible = hp.mul(&f.scale(hp), &hp.floor(24));
    // a_j = 2/(G-1) * sum'' f_i T_j(z_i), endpoints halved; a_0 and a_{G-1} halved again.
    let weights: Vec<Real> = f
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 0 || i == last { hp.div(v, &hp.int(2)) } else { v.clone() })
        .collect();
    let scale = hp.div(&hp.int(2), &hp.int(last as i64));
    let mut prev: Vec<Real> = vec![hp.int(1); z.len()];
    let mut cur: Vec<Real> = z.to_vec();
    let mut coeffs = Vec::new();
    let mut quiet = 0;
    for j in 0..=last {
        let basis = if j == 0 { &prev } else { &cur };
        let dot = weights
            .iter()
            .zip(basis)
            .fold(hp.zero(), |acc, (w, t)| hp.add(&acc, &hp.mul(w, t)));
        let mut a = hp.mul(&scale, &dot);
        if j == 0 || j == last {
            a = hp.div(&a, &hp.int(2));
        }
        quiet = if a.abs() <= negligible { quiet + 1 } else { 0 };
        coeffs.push(a);
        if quiet >= TAIL_RUN {
            break;
        }
        if j >= 1 {
            let next: Vec<Real> = z
                .iter()
                .zip(&cur)
                .zip(&prev)
                .map(|((t, c), p)| hp.sub(&hp.mul(&hp.add(t, t), c), p))
                .collect();
            prev = std::mem::replace(&mut cur, next);
        }
    }
    Ok(coeffs)
}

fn tail_sum(coeffs: &[Real], degree: usize, hp: &HpContext) -> Real {
    coeffs
        .iter()
        .skip(degree + 1)
        .fold(hp.zero(), |acc, a| hp.add(&acc, &a.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    Even,
    Odd,
    None,
}

fn parity(f: &FunctionSamples, hp: &HpContext) -> Parity {
    let z = f.z();
    let n = z.len();
    let tol = hp.mul(&f.scale(hp), &hp.floor(20));
    let symmetric_grid = (0..n / 2).all(|i| hp.add(&z[i], &z[n - 1 - i]).abs() <= tol);
    if !symmetric_grid {
        return Parity::None;
    }
    let v = &f.values;
    if (0..n / 2).all(|i| hp.sub(&v[i], &v[n - 1 - i]).abs() <= tol) {
        Parity::Even
    } else if (0..n.div_ceil(2)).all(|i| hp.add(&v[i], &v[n - 1 - i]).abs() <= tol) {
        Parity::Odd
    } else {
        Parity::None
    }
}

/// Exchange iteration over the sample grid in the Chebyshev basis.
///
/// For an even (odd) function and even (odd) degree the best approximant has
/// degree `degree - 1` and the reference system degenerates; the iteration
/// then runs at `degree + 1`, which has the same best error.
fn remez(f: &FunctionSamples, degree: usize, hp: &mut HpContext) -> Result<Real, AnalysisError> {
    let d = match parity(f, hp) {
        Parity::Even if degree.is_multiple_of(2) => degree + 1,
        Parity::Odd if !degree.is_multiple_of(2) => degree + 1,
        _ => degree,
    };
    let n = d + 2;
    let g = f.len();
    if g < n {
        return Err(AnalysisError::InsufficientSamples { samples: g, needed: n });
    }
    let z = f.z();
    let floor = hp.mul(&f.scale(hp), &hp.floor(20));

    // basis[i][j] = T_j(z_i)
    let basis: Vec<Vec<Real>> = z
        .iter()
        .map(|t| {
            let mut row = vec![hp.int(1)];
            if d >= 1 {
                row.push(t.clone());
            }
            for j in 2..=d {
                let next = hp.sub(&hp.mul(&hp.add(t, t), &row[j - 1]), &row[j - 2]);
                row.push(next);
            }
            row
        })
        .collect();

    let mut reference = initial_reference(f, n, hp);
    let mut last_level = hp.zero();
    let mut last_max = hp.zero();
    for _ in 0..MAX_EXCHANGES {
        let mut matrix: Vec<Vec<Real>> = reference
            .iter()
            .enumerate()
            .map(|(r, &i)| {
                let mut row = basis[i].clone();
                row.push(hp.int(if r % 2 == 0 { 1 } else { -1 }));
                row.push(f.values[i].clone());
                row
            })
            .collect();
        let solution = solve_dense(&mut matrix, hp).ok_or(AnalysisError::RemezDegenerate { runs: 0, needed: n })?;
        let level = solution[d + 1].abs();
        let coeffs = &solution[..=d];
        let errors: Vec<Real> = basis
            .iter()
            .zip(&f.values)
            .map(|(row, v)| {
                let approx = row.iter().zip(coeffs).fold(hp.zero(), |acc, (t, c)| hp.add(&acc, &hp.mul(t, c)));
                hp.sub(v, &approx)
            })
            .collect();
        let max = max_abs(&errors).expect("nonempty");
        if max <= floor {
            if f.is_chebyshev_lobatto() {
                let coeffs = chebyshev_coefficients_in(f, hp)?;
                return Ok(tail_sum(&coeffs, degree, hp));
            }
            return Ok(max);
        }
        let gap = hp.sub(&max, &level);
        if gap <= hp.mul(&max, &hp.float(LEVEL_TARGET)) || gap <= floor {
            return Ok(max);
        }
        last_level = level;
        last_max = max;

        let extrema = run_extrema(&errors);
        if extrema.len() < n {
            return Err(AnalysisError::RemezDegenerate {
                runs: extrema.len(),
                needed: n,
            });
        }
        reference = thin_extrema(&errors, extrema, n);
    }
    if hp.sub(&last_max, &last_level) <= hp.mul(&last_max, &hp.float(LEVEL_AGREEMENT)) {
        return Ok(last_max);
    }
    Err(AnalysisError::RemezNonConvergence {
        iterations: MAX_EXCHANGES,
        level: crate::hp::to_f64(&last_level),
        max_error: crate::hp::to_f64(&last_max),
    })
}

/// Grid points nearest to the extrema of `T_{n-1}`.
fn initial_reference(f: &FunctionSamples, n: usize, hp: &mut HpContext) -> Vec<usize> {
    let g = f.len();
    if f.is_chebyshev_lobatto() {
        return (0..n).map(|i| (i * (g - 1) + (n - 1) / 2) / (n - 1)).collect();
    }
    let pi = hp.pi();
    let z = f.z();
    let mut out: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let angle = hp.div(&hp.mul(&pi, &hp.int((n - 1 - i) as i64)), &hp.int((n - 1) as i64));
        let target = hp.cos(&angle);
        let nearest = (0..g)
            .min_by(|&a, &b| {
                let da = hp.sub(&z[a], &target).abs();
                let db = hp.sub(&z[b], &target).abs();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        let floor = out.last().map_or(0, |&p| p + 1);
        out.push(nearest.max(floor).min(g - n + i));
    }
    out
}

/// Index of the largest `|e|` in each maximal run of equal sign.
fn run_extrema(errors: &[Real]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = 0;
    for i in 1..errors.len() {
        if errors[i].is_negative() != errors[best].is_negative() {
            out.push(best);
            best = i;
        } else if errors[i].abs() > errors[best].abs() {
            best = i;
        }
    }
    out.push(best);
    out
}

/// Drops extrema down to `n`, keeping alternation and the largest error.
/// An interior minimum goes together with its smaller neighbour.
fn thin_extrema(errors: &[Real], mut extrema: Vec<usize>, n: usize) -> Vec<usize> {
    let size = |extrema: &[usize], k: usize| errors[extrema[k]].abs();
    while extrema.len() > n {
        let last = extrema.len() - 1;
        if extrema.len() == n + 1 {
            let drop = if size(&extrema, 0) <= size(&extrema, last) { 0 } else { last };
            extrema.remove(drop);
            continue;
        }
        let smallest = (0..=last)
            .min_by(|&a, &b| {
                size(&extrema, a)
                    .partial_cmp(&size(&extrema, b))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        if smallest == 0 || smallest == last {
            extrema.remove(smallest);
        } else {
            let neighbour = if size(&extrema, smallest - 1) <= size(&extrema, smallest + 1) {
                smallest - 1
            } else {
                smallest + 1
            };
            extrema.remove(smallest.max(neighbour));
            extrema.remove(smallest.min(neighbour));
        }
    }
    extrema
}

/// Gaussian elimination with partial pivoting on an augmented `n x (n+1)` matrix.
fn solve_dense(m: &mut [Vec<Real>], hp: &HpContext) -> Option<Vec<Real>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].is_zero() {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = hp.div(&m[row][col], &m[col][col]);
            let (upper, lower) = m.split_at_mut(row);
            for (t, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *t = hp.sub(t, &hp.mul(&factor, p));
            }
        }
    }
    let mut x = vec![hp.zero(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n].clone();
        for k in row + 1..n {
            acc = hp.sub(&acc, &hp.mul(&m[row][k], &x[k]));
        }
        x[row] = hp.div(&acc, &m[row][row]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::to_f64;
    use tau_core::polynomial::int;
    use tau_core::Poly;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig {
            working_bits: 128,
            grid_size: 1025,
        }
    }

    #[test]
    fn monomial_best_error_is_scaled_chebyshev() {
        // 2520 = lcm(2..=9): the extrema of T_{n+1} are grid points.
        let cfg = PrecisionConfig {
            working_bits: 128,
            grid_size: 2521,
        };
        for n in 1..=8usize {
            let f = FunctionSamples::from_poly(&Poly::monomial(int(1), n + 1), (int(-1), int(1)), cfg).unwrap();
            let e = to_f64(&best_approx_error(&f, n, ApproxMethod::Remez, cfg).unwrap());
            assert!((e - 0.5f64.powi(n as i32)).abs() < 1e-9, "n = {n}: {e}");
            let t = to_f64(&best_approx_error(&f, n, ApproxMethod::ChebTruncation, cfg).unwrap());
            assert!((t - 0.5f64.powi(n as i32)).abs() < 1e-12, "n = {n}: {t}");
        }
    }

    #[test]
    fn polynomial_within_degree_has_no_error() {
        let f = FunctionSamples::from_poly(&Poly::from_ints(&[1, 2, 3]), (int(-1), int(1)), cfg()).unwrap();
        let e = best_approx_error(&f, 3, ApproxMethod::Remez, cfg()).unwrap();
        assert!(to_f64(&e) < 1e-30);
    }

    #[test]
    fn chebyshev_coefficients_of_polynomial() {
        // x^3 = (3 T_1 + T_3) / 4
        let f = FunctionSamples::from_poly(&Poly::monomial(int(1), 3), (int(-1), int(1)), cfg()).unwrap();
        let a: Vec<f64> = chebyshev_coefficients(&f, cfg()).unwrap().iter().map(to_f64).collect();
        assert!((a[1] - 0.75).abs() < 1e-30 && (a[3] - 0.25).abs() < 1e-30);
        assert!(a[0].abs() < 1e-30 && a[2].abs() < 1e-30 && a[4].abs() < 1e-30);
    }

    #[test]
    fn l2_best_error_of_t3_part() {
        // f = T_1 + T_3 on [-1, 1]: best degree-2 L2 error is ||T_3|| = sqrt(pi/2)
        let f = FunctionSamples::from_poly(&Poly::from_ints(&[0, -2, 0, 4]), (int(-1), int(1)), cfg()).unwrap();
        let e = to_f64(&best_l2_approx_error(&f, 2, cfg()).unwrap());
        assert!((e - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn dense_solver() {
        let hp = HpContext::new(128);
        let mut m = vec![
            vec![hp.int(0), hp.int(2), hp.int(4)],
            vec![hp.int(3), hp.int(1), hp.int(5)],
        ];
        let x = solve_dense(&mut m, &hp).unwrap();
        assert_eq!((to_f64(&x[0]), to_f64(&x[1])), (1.0, 2.0));
        let mut singular = vec![vec![hp.int(1), hp.int(1), hp.int(0)], vec![hp.int(2), hp.int(2), hp.int(0)]];
        assert!(solve_dense(&mut singular, &hp).is_none());
    }
}
