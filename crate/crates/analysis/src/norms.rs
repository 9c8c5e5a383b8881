//! Sup-norm and Chebyshev-weighted L2 norms.
//!
//! The weight is `rho(z) = (1 - z^2)^(-1/2)` with `z` the affine image of
//! `[a, b]` on `[-1, 1]`, so `int_a^b v^2 rho(z(x)) dx = (b-a)/2 * int v^2 rho dz`.

use tau_core::{Poly, Rational};

use crate::hp::{max_abs, HpContext, Real};
use crate::samples::{lobatto_nodes, FunctionSamples};
use crate::{AnalysisError, PrecisionConfig};

/// `max_i |f(x_i) - p(x_i)|` over the sample grid.
pub fn sup_norm_error(f: &FunctionSamples, p: &Poly, cfg: PrecisionConfig) -> Result<Real, AnalysisError> {
    let mut hp = HpContext::new(cfg.working_bits);
    let diff = residuals(f, p, &mut hp)?;
    Ok(max_abs(&diff).expect("nonempty"))
}

pub(crate) fn residuals(f: &FunctionSamples, p: &Poly, hp: &mut HpContext) -> Result<Vec<Real>, AnalysisError> {
    if f.is_empty() {
        return Err(AnalysisError::EmptySamples);
    }
    let coeffs = hp.poly_coeffs(p);
    Ok(f.grid
        .iter()
        .zip(&f.values)
        .map(|(x, v)| hp.sub(v, &hp.horner(&coeffs, x)))
        .collect())
}

/// Weighted L2 norm of a polynomial by Gauss–Chebyshev quadrature with
/// `deg(v) + 1` nodes, exact for `v^2`.
pub fn weighted_l2_norm(
    v: &Poly,
    interval: &(Rational, Rational),
    cfg: PrecisionConfig,
) -> Result<Real, AnalysisError> {
    let nodes = v.degree().unwrap_or(0) + 1;
    weighted_l2_norm_with_nodes(v, interval, nodes, cfg)
}

pub fn weighted_l2_norm_with_nodes(
    v: &Poly,
    interval: &(Rational, Rational),
    nodes: usize,
    cfg: PrecisionConfig,
) -> Result<Real, AnalysisError> {
    cfg.validate()?;
    let (a, b) = interval;
    if a >= b || nodes == 0 {
        return Err(AnalysisError::InvalidInterval);
    }
    let mut hp = HpContext::new(cfg.working_bits);
    let pi = hp.pi();
    let count = hp.int(nodes as i64);
    let two = hp.int(2);
    let ra = hp.rational(a);
    let rb = hp.rational(b);
    let mid = hp.div(&hp.add(&ra, &rb), &two);
    let half = hp.div(&hp.sub(&rb, &ra), &two);
    let coeffs = hp.poly_coeffs(v);
    let mut sum = hp.zero();
    for k in 1..=nodes {
        // z_k = cos((2k - 1) pi / 2N)
        let angle = hp.div(&hp.mul(&pi, &hp.int(2 * k as i64 - 1)), &hp.mul(&two, &count));
        let z = hp.cos(&angle);
        let x = hp.add(&mid, &hp.mul(&half, &z));
        let value = hp.horner(&coeffs, &x);
        sum = hp.add(&sum, &hp.mul(&value, &value));
    }
    let integral = hp.mul(&hp.mul(&half, &hp.div(&pi, &count)), &sum);
    Ok(hp.sqrt(&integral))
}

/// Weighted L2 norm of sampled values by Gauss–Chebyshev–Lobatto quadrature;
/// requires the Lobatto grid.
pub fn weighted_l2_samples(f: &FunctionSamples, cfg: PrecisionConfig) -> Result<Real, AnalysisError> {
    let mut hp = HpContext::new(cfg.working_bits);
    lobatto_l2(f, &f.values, &mut hp)
}

/// Weighted L2 norm of `f - p` on the Lobatto grid.
pub fn weighted_l2_error(f: &FunctionSamples, p: &Poly, cfg: PrecisionConfig) -> Result<Real, AnalysisError> {
    let mut hp = HpContext::new(cfg.working_bits);
    let diff = residuals(f, p, &mut hp)?;
    lobatto_l2(f, &diff, &mut hp)
}

fn lobatto_l2(f: &FunctionSamples, values: &[Real], hp: &mut HpContext) -> Result<Real, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::EmptySamples);
    }
    if !f.is_chebyshev_lobatto() || values.len() < 2 {
        return Err(AnalysisError::NotChebyshevGrid);
    }
    let last = values.len() - 1;
    let mut sum = hp.zero();
    for (i, v) in values.iter().enumerate() {
        let sq = hp.mul(v, v);
        let term = if i == 0 || i == last { hp.div(&sq, &hp.int(2)) } else { sq };
        sum = hp.add(&sum, &term);
    }
    let pi = hp.pi();
    let a = hp.rational(&f.interval.0);
    let b = hp.rational(&f.interval.1);
    let half = hp.div(&hp.sub(&b, &a), &hp.int(2));
    let integral = hp.mul(&hp.mul(&half, &hp.div(&pi, &hp.int(last as i64))), &sum);
    Ok(hp.sqrt(&integral))
}

/// Nodes of the default grid, exposed for callers that sample by hand.
pub fn chebyshev_lobatto_nodes(count: usize, cfg: PrecisionConfig) -> Vec<Real> {
    let mut hp = HpContext::new(cfg.working_bits);
    lobatto_nodes(count, &mut hp)
}
