//! The generic engine: any kernel implementing `BlockKernel` on a union of
//! intervals and rays, here a rank-one kernel with a known determinant.

use gapdet::fredholm::{fredholm_det, BlockKernel};
use gapdet::quadrature::{DomainComponent, DEFAULT_RAY_SCALE};
use num_complex::Complex64;

/// `K(x, y) = e^{-x-y}`, so `det(I - K)` on `D` is `1 - int_D e^{-2x} dx`.
struct RankOne;

impl BlockKernel for RankOne {
    fn entry(&self, _: usize, _: usize, x: Complex64, y: Complex64) -> gapdet::Result<Complex64> {
        Ok((-x - y).exp())
    }
}

fn main() -> gapdet::Result<()> {
    let domain = [
        DomainComponent::finite(0.0, 0.5, "I", 0)?,
        DomainComponent::ray(1.0, DEFAULT_RAY_SCALE, "[1,inf)", 0)?,
    ];
    let r = fredholm_det(&RankOne, &domain, 20, 1e-13)?;
    let exact = 1.0 - 0.5 * (1.0 - (-1.0f64).exp()) - 0.5 * (-2.0f64).exp();
    println!(
        "det {:.16}, exact {exact:.16}, nodes {:?}",
        r.re(),
        r.m_used
    );
    Ok(())
}
