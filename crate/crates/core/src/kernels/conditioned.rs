//! Kernels conditioned on having no points in a set `A`:
//! `K^A = K + K_{.A} (1 - K_{AA})^{-1} K_{A.}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fredholm::{assemble, wrap_kernel_error, BlockKernel, Discretization, Lu};
use crate::quadrature::DomainComponent;

/// Below this `|det(1 - K_AA)|` the conditioning event is treated as
/// having probability zero.
const MIN_RESTRICTION_DET: f64 = 1e-14;

/// A block kernel conditioned on a gap in `A`, with `1 - K_AA` factorized
/// once at construction.
pub struct ConditionedKernel<'a> {
    base: &'a dyn BlockKernel,
    disc: Discretization,
    lu: Lu<Complex64>,
    /// `det(1 - K_AA)`
    pub restriction_det: Complex64,
}

impl<'a> ConditionedKernel<'a> {
    /// `a` holds the components of the conditioning set, each tagged with
    /// its block of `base`; `m` is the base node count.
    pub fn new(base: &'a dyn BlockKernel, a: &[DomainComponent], m: usize) -> Result<Self> {
        let disc = Discretization::new(a, m)?;
        let lu = Lu::factor(assemble(base, &disc)?);
        let det = if disc.is_empty() {
            Complex64::new(1.0, 0.0)
        } else {
            lu.det()
        };
        if lu.is_singular() || !(det.norm() >= MIN_RESTRICTION_DET) {
            return Err(Error::SingularRestriction { det: det.re });
        }
        Ok(ConditionedKernel {
            base,
            disc,
            lu,
            restriction_det: det,
        })
    }

    fn base_entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        self.base
            .entry(i, j, x, y)
            .map_err(|e| wrap_kernel_error(e, i, j, x, y))
    }
}

impl BlockKernel for ConditionedKernel<'_> {
    fn entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        let k = self.base_entry(i, j, x, y)?;
        if self.disc.is_empty() {
            return Ok(k);
        }
        let d = &self.disc;
        let mut g = (0..d.len())
            .map(|p| self.base_entry(d.blocks[p], j, d.points[p], y))
            .collect::<Result<Vec<_>>>()?;
        if !self.lu.solve_in_place(&mut g) {
            return Err(Error::SingularRestriction {
                det: self.restriction_det.re,
            });
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (p, gp) in g.iter().enumerate() {
            s += d.weights[p] * self.base_entry(i, d.blocks[p], x, d.points[p])? * gp;
        }
        Ok(k + s)
    }
}

/// `K^A(y1, y2)` for a single-block real kernel.
pub fn conditioned_kernel(
    base: &dyn BlockKernel,
    a: &[DomainComponent],
    m: usize,
    y1: f64,
    y2: f64,
) -> Result<f64> {
    let c = ConditionedKernel::new(base, a, m)?;
    Ok(
        c.entry(0, 0, Complex64::new(y1, 0.0), Complex64::new(y2, 0.0))?
            .re,
    )
}
