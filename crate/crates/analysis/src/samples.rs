use tau_core::{interval_map, Poly, Rational};

use crate::hp::{HpContext, Real};
use crate::{AnalysisError, PrecisionConfig};

/// Values of a function on a grid in `[a, b]`.
///
/// `z` holds the grid mapped onto `[-1, 1]`. The default grid is the
/// Chebyshev–Lobatto set `z_i = -cos(pi*i/(G-1))`, ascending, mirror-symmetric.
#[derive(Debug, Clone)]
pub struct FunctionSamples {
    pub interval: (Rational, Rational),
    pub grid: Vec<Real>,
    pub values: Vec<Real>,
    z: Vec<Real>,
    lobatto: bool,
}

impl FunctionSamples {
    /// Samples on an arbitrary ascending grid.
    pub fn new(
        interval: (Rational, Rational),
        grid: Vec<Real>,
        values: Vec<Real>,
        cfg: PrecisionConfig,
    ) -> Result<Self, AnalysisError> {
        cfg.validate()?;
        if grid.len() != values.len() {
            return Err(AnalysisError::LengthMismatch {
                grid: grid.len(),
                values: values.len(),
            });
        }
        if grid.is_empty() {
            return Err(AnalysisError::EmptySamples);
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(AnalysisError::UnsortedGrid);
        }
        let mut hp = HpContext::new(cfg.working_bits);
        let map = interval_map(&interval.0, &interval.1).map_err(|_| AnalysisError::InvalidInterval)?;
        let alpha = hp.rational(&map.alpha);
        let beta = hp.rational(&map.beta);
        let z = grid.iter().map(|x| hp.add(&hp.mul(&alpha, x), &beta)).collect();
        Ok(Self {
            interval,
            grid,
            values,
            z,
            lobatto: false,
        })
    }

    /// Samples `f` on the Chebyshev–Lobatto grid of `cfg.grid_size` points.
    pub fn from_fn(
        interval: (Rational, Rational),
        cfg: PrecisionConfig,
        mut f: impl FnMut(&Real, &mut HpContext) -> Real,
    ) -> Result<Self, AnalysisError> {
        cfg.validate()?;
        let (a, b) = &interval;
        if a >= b {
            return Err(AnalysisError::InvalidInterval);
        }
        let mut hp = HpContext::new(cfg.working_bits);
        let z = lobatto_nodes(cfg.grid_size, &mut hp);
        let a = hp.rational(a);
        let b = hp.rational(b);
        let two = hp.int(2);
        let mid = hp.div(&hp.add(&a, &b), &two);
        let half = hp.div(&hp.sub(&b, &a), &two);
        let grid: Vec<Real> = z.iter().map(|t| hp.add(&mid, &hp.mul(&half, t))).collect();
        let values = grid.iter().map(|x| f(x, &mut hp)).collect();
        Ok(Self {
            interval,
            grid,
            values,
            z,
            lobatto: true,
        })
    }

    pub fn from_poly(p: &Poly, interval: (Rational, Rational), cfg: PrecisionConfig) -> Result<Self, AnalysisError> {
        let mut coeffs: Option<Vec<Real>> = None;
        Self::from_fn(interval, cfg, |x, hp| {
            let c = coeffs.get_or_insert_with(|| hp.poly_coeffs(p));
            hp.horner(c, x)
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid mapped onto `[-1, 1]`.
    pub fn z(&self) -> &[Real] {
        &self.z
    }

    pub fn is_chebyshev_lobatto(&self) -> bool {
        self.lobatto
    }

    /// Largest `|value|`, the scale for precision floors.
    pub(crate) fn scale(&self, hp: &HpContext) -> Real {
        crate::hp::max_abs(&self.values)
            .filter(|m| !m.is_zero())
            .unwrap_or_else(|| hp.int(1))
    }
}

/// `-cos(pi*i/(g-1))` for `i = 0..g`, exactly antisymmetric about the middle.
pub(crate) fn lobatto_nodes(g: usize, hp: &mut HpContext) -> Vec<Real> {
    let pi = hp.pi();
    let steps = hp.int((g - 1) as i64);
    let mut z = vec![hp.zero(); g];
    for i in 0..g.div_ceil(2) {
        let angle = hp.div(&hp.mul(&pi, &hp.int(i as i64)), &steps);
        let c = hp.cos(&angle);
        z[g - 1 - i] = c.clone();
        z[i] = c.neg();
    }
    if g % 2 == 1 {
        z[g / 2] = hp.zero();
    }
    z
}
