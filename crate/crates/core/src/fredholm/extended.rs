//! Double-double Nyström assembly for real kernels on real domains.

use num_complex::Complex64;
use rayon::prelude::*;

use super::lu::Matrix;
use super::{wrap_kernel_error, MAX_MATRIX};
use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_dd, DomainComponent};

/// Real block kernel evaluated in double-double.
pub trait BlockKernelDd: Sync {
    fn entry_dd(&self, i: usize, j: usize, x: Dd, y: Dd) -> Result<Dd>;
}

#[derive(Debug, Clone)]
pub struct DiscretizationDd {
    pub points: Vec<Dd>,
    pub weights: Vec<Dd>,
    pub blocks: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl DiscretizationDd {
    pub fn new(domains: &[DomainComponent], m: usize) -> Result<Self> {
        let mut d = DiscretizationDd {
            points: vec![],
            weights: vec![],
            blocks: vec![],
            sizes: vec![],
        };
        for c in domains {
            let k = c.nodes(m);
            let rule = gauss_legendre_dd(k)?;
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (x, dx) = c.map_dd(t)?;
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

pub fn assemble_dd(kernel: &dyn BlockKernelDd, disc: &DiscretizationDd) -> Result<Matrix<Dd>> {
    let n = disc.len();
    let rows: Vec<Vec<Dd>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let (bi, x) = (disc.blocks[p], disc.points[p]);
            let mut row = Vec::with_capacity(n);
            for q in 0..n {
                let (bj, y) = (disc.blocks[q], disc.points[q]);
                let k = kernel.entry_dd(bi, bj, x, y).map_err(|e| {
                    let (cx, cy) = (
                        Complex64::new(x.to_f64(), 0.0),
                        Complex64::new(y.to_f64(), 0.0),
                    );
                    wrap_kernel_error(e, bi, bj, cx, cy)
                })?;
                let delta = if p == q { Dd::ONE } else { Dd::ZERO };
                row.push(delta - disc.weights[q] * k);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows))
}
