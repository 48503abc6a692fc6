//! Nyström discretization of block integral operators and Fredholm
//! determinants `det(1 - K)`.
//!
//! Each [`DomainComponent`] is pulled back to (0,1) and sampled with a
//! Gauss-Legendre rule. The weight of a node, including the map's Jacobian
//! and the component's `1 - z` factor, multiplies its column:
//!
//! `M[p, q] = delta_pq - w_q K(block_p, block_q, x_p, x_q)`.

pub mod extended;
pub mod lu;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, DomainComponent};
pub use lu::{determinant, Lu, Matrix, Scalar};

/// Largest matrix the engine will assemble.
pub const MAX_MATRIX: usize = 4000;

/// A kernel defined blockwise on a disjoint union of domains.
///
/// `i` and `j` are the blocks of the row and column points. Implementations
/// must be pure: the same arguments always give the same bits.
pub trait BlockKernel: Sync {
    fn entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64>;
}

impl<F> BlockKernel for F
where
    F: Fn(usize, usize, Complex64, Complex64) -> Result<Complex64> + Sync,
{
    fn entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        self(i, j, x, y)
    }
}

/// Mapped nodes of a list of components at one resolution.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub points: Vec<Complex64>,
    /// Quadrature weight times map derivative times `1 - z`.
    pub weights: Vec<Complex64>,
    pub blocks: Vec<usize>,
    /// Node count of each component.
    pub sizes: Vec<usize>,
}

impl Discretization {
    pub fn new(domains: &[DomainComponent], m: usize) -> Result<Self> {
        let mut d = Discretization {
            points: vec![],
            weights: vec![],
            blocks: vec![],
            sizes: vec![],
        };
        for c in domains {
            let k = c.nodes(m);
            let rule = gauss_legendre(k)?;
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (x, dx) = c.map(t)?;
                d.points.push(x);
                d.weights.push(dx * w * (1.0 - c.z));
                d.blocks.push(c.block);
            }
            d.sizes.push(k);
        }
        if d.points.len() > MAX_MATRIX {
            return Err(Error::TooLarge {
                size: d.points.len(),
                limit: MAX_MATRIX,
            });
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn wrap_kernel_error(e: Error, i: usize, j: usize, x: Complex64, y: Complex64) -> Error {
    match e {
        Error::Kernel { .. } => e,
        other => Error::Kernel {
            i,
            j,
            x,
            y,
            source: Box::new(other),
        },
    }
}

fn assemble_rows(
    kernel: &dyn BlockKernel,
    disc: &Discretization,
    weight: impl Fn(usize, usize) -> Complex64 + Sync,
) -> Result<Matrix<Complex64>> {
    let n = disc.len();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let (bi, x) = (disc.blocks[p], disc.points[p]);
            let mut row = Vec::with_capacity(n);
            for q in 0..n {
                let (bj, y) = (disc.blocks[q], disc.points[q]);
                let k = kernel
                    .entry(bi, bj, x, y)
                    .map_err(|e| wrap_kernel_error(e, bi, bj, x, y))?;
                let delta = if p == q { 1.0 } else { 0.0 };
                row.push(Complex64::new(delta, 0.0) - weight(p, q) * k);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows))
}

/// `I - K W` with the weights on the columns.
pub fn assemble(kernel: &dyn BlockKernel, disc: &Discretization) -> Result<Matrix<Complex64>> {
    assemble_rows(kernel, disc, |_, q| disc.weights[q])
}

/// `I - W^{1/2} K W^{1/2}`, similar to [`assemble`] by a diagonal scaling.
pub fn assemble_symmetric(
    kernel: &dyn BlockKernel,
    disc: &Discretization,
) -> Result<Matrix<Complex64>> {
    let roots: Vec<Complex64> = disc.weights.iter().map(|w| w.sqrt()).collect();
    assemble_rows(kernel, disc, |p, q| roots[p] * roots[q])
}

/// Outcome of a determinant computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetResult {
    pub value: Complex64,
    /// `|Im value|`; the exact determinants computed here are all real.
    pub imag_residual: f64,
    /// Change between the last two resolutions.
    pub err_estimate: f64,
    /// Nodes per component at the final resolution.
    pub m_used: Vec<usize>,
}

impl DetResult {
    pub fn exact(value: f64) -> Self {
        DetResult {
            value: Complex64::new(value, 0.0),
            imag_residual: 0.0,
            err_estimate: 0.0,
            m_used: vec![],
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// Value at the finest resolution reached by [`converge`].
#[derive(Debug, Clone, Copy)]
pub struct Converged {
    pub value: Complex64,
    pub err_estimate: f64,
    pub m: usize,
}

/// Evaluates `eval(m0)`, `eval(2 m0)` and, if their difference exceeds
/// `tol`, `eval(4 m0)`.
pub fn converge<F>(m0: usize, tol: f64, mut eval: F) -> Result<Converged>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    converge_levels(m0, tol, 3, &mut eval)
}

pub(crate) fn converge_levels<F>(
    m0: usize,
    tol: f64,
    levels: usize,
    eval: &mut F,
) -> Result<Converged>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    if m0 < 1 || !(tol > 0.0) {
        return Err(Error::argument(format!("converge: m0 = {m0}, tol = {tol}")));
    }
    let mut m = m0;
    let mut prev = eval(m)?;
    let mut coarse = prev;
    let mut err = f64::INFINITY;
    for _ in 1..levels {
        m *= 2;
        let next = eval(m)?;
        err = (next - prev).norm();
        if err <= tol {
            return Ok(Converged {
                value: next,
                err_estimate: err,
                m,
            });
        }
        coarse = prev;
        prev = next;
    }
    Err(Error::NonConvergence {
        coarse,
        fine: prev,
        err,
        tol,
        nodes: m,
    })
}

/// `det(1 - K)` over the given components at a single resolution.
pub fn det_at(
    kernel: &dyn BlockKernel,
    domains: &[DomainComponent],
    m: usize,
) -> Result<Complex64> {
    let disc = Discretization::new(domains, m)?;
    if disc.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(determinant(assemble(kernel, &disc)?).0)
}

/// Fredholm determinant with the doubling convergence policy.
pub fn fredholm_det(
    kernel: &dyn BlockKernel,
    domains: &[DomainComponent],
    m0: usize,
    tol: f64,
) -> Result<DetResult> {
    if m0 < 10 {
        return Err(Error::argument(format!(
            "fredholm_det: m0 = {m0} is below 10"
        )));
    }
    let c = converge(m0, tol, |m| det_at(kernel, domains, m))?;
    Ok(DetResult {
        value: c.value,
        imag_residual: c.value.im.abs(),
        err_estimate: c.err_estimate,
        m_used: domains.iter().map(|d| d.nodes(c.m)).collect(),
    })
}
