use num_complex::Complex64;

use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};
use crate::fredholm::extended::BlockKernelDd;
use crate::fredholm::BlockKernel;
use crate::specfun::{self, extended::airy_dd, AIRY_MIN};

const NEAR_DIAGONAL: f64 = 1e-6;

fn pair(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() || x < AIRY_MIN {
        return Err(Error::domain("airy_kernel", x, AIRY_MIN, f64::INFINITY));
    }
    Ok(specfun::airy_tail_pair(x))
}

/// The Airy kernel `(Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y)`.
///
/// For `|x - y| < 1e-6` the value is expanded about the midpoint `c`:
/// `K(c + d, c - d) = Ai'(c)^2 - c Ai(c)^2 - d^2 (2 c^2 Ai^2 - 2 c Ai'^2 - Ai Ai') / 3`,
/// the odd terms vanishing by symmetry.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    if (x - y).abs() < NEAR_DIAGONAL {
        let c = 0.5 * (x + y);
        let d = 0.5 * (x - y);
        let (a, ap) = pair(c)?;
        let diag = ap * ap - c * a * a;
        let second = (2.0 * c * c * a * a - 2.0 * c * ap * ap - a * ap) / 3.0;
        return Ok(diag - d * d * second);
    }
    let (ax, apx) = pair(x)?;
    let (ay, apy) = pair(y)?;
    Ok((ax * apy - apx * ay) / (x - y))
}

pub fn airy_kernel_dd(x: Dd, y: Dd) -> Result<Dd> {
    let diff = x - y;
    if diff.abs().to_f64() < 1e-12 {
        let c = (x + y) * 0.5;
        let d = diff * 0.5;
        let (a, ap) = airy_dd(c)?;
        let diag = ap.sqr() - c * a.sqr();
        let second = (c.sqr() * a.sqr() * 2.0 - c * ap.sqr() * 2.0 - a * ap) / 3.0;
        return Ok(diag - d.sqr() * second);
    }
    let (ax, apx) = airy_dd(x)?;
    let (ay, apy) = airy_dd(y)?;
    Ok((ax * apy - apx * ay) / diff)
}

/// [`airy_kernel`] as a single-block kernel on real points.
#[derive(Debug, Clone, Copy, Default)]
pub struct AiryKernel;

impl BlockKernel for AiryKernel {
    fn entry(&self, _: usize, _: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        Ok(Complex64::new(airy_kernel(x.re, y.re)?, 0.0))
    }
}

impl BlockKernelDd for AiryKernel {
    fn entry_dd(&self, _: usize, _: usize, x: Dd, y: Dd) -> Result<Dd> {
        airy_kernel_dd(x, y)
    }
}
