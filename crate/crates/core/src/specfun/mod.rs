//! Real Airy functions and the elementary functions built on them.
//!
//! Ai and Ai' are evaluated from a precomputed double-double anchor table
//! (spacing 1/4 on `[-32, 16]`) by a local Taylor expansion of the Airy
//! equation, and from the exponential asymptotic expansion above 16. The
//! result is accurate to a few ulps relative to `max(|Ai|, |Ai'|)` across the
//! whole window, well inside the 1e-12 absolute target.
//!
//! Double-double variants live in [`extended`]; they are used by the
//! deep-overlap determinant path.

pub mod extended;
pub mod golden;
pub(crate) mod table;

use num_complex::Complex64;

use crate::error::{Error, Result};
use table::AnchorTable;

/// Lower end of the documented accuracy window.
pub const AIRY_MIN: f64 = -30.0;
/// Upper end of the documented accuracy window. `Ai(200)` is about 1e-820.
pub const AIRY_MAX: f64 = 200.0;

const SIXTH_ROOT_2: f64 = 1.122462048309373;

/// Ai together with its derivative at the same point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
}

/// Ai and Ai' for any `x >= AIRY_MIN` without the upper window check.
/// Values above the window underflow to zero.
pub(crate) fn airy_unchecked(x: f64) -> (f64, f64) {
    if x <= table::SEAM {
        AnchorTable::get().eval(x)
    } else {
        let (zeta, s, sp) = table::asymptotic_f64(x);
        let e = (-zeta).exp();
        (s * e, sp * e)
    }
}

fn check_window(what: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && (AIRY_MIN..=AIRY_MAX).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(what, x, AIRY_MIN, AIRY_MAX))
    }
}

/// Ai and Ai' at `x`.
pub fn airy(x: f64) -> Result<AiryPair> {
    check_window("airy", x)?;
    let (ai, ai_prime) = airy_unchecked(x);
    Ok(AiryPair { ai, ai_prime })
}

/// The Airy function Ai(x) on `[AIRY_MIN, AIRY_MAX]`.
///
/// ```
/// let a = gapdet::specfun::airy_ai(0.0).unwrap();
/// assert!((a - 0.355028053887817).abs() < 1e-15);
/// ```
pub fn airy_ai(x: f64) -> Result<f64> {
    check_window("airy_ai", x)?;
    Ok(airy_unchecked(x).0)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check_window("airy_ai_prime", x)?;
    Ok(airy_unchecked(x).1)
}

/// Ai on `[AIRY_MIN, inf)`, returning 0 where the value underflows.
///
/// Kernels sample Ai along mapped rays whose far nodes lie beyond the
/// accuracy window; there the true value is below the smallest f64.
pub fn airy_ai_tail(x: f64) -> Result<f64> {
    if x.is_nan() || x < AIRY_MIN {
        return Err(Error::domain("airy_ai_tail", x, AIRY_MIN, f64::INFINITY));
    }
    Ok(airy_tail_pair(x).0)
}

pub(crate) fn airy_tail_pair(x: f64) -> (f64, f64) {
    if x > 1.0e6 {
        (0.0, 0.0)
    } else {
        airy_unchecked(x)
    }
}

/// `(zeta, scaled)` with `Ai(x) = exp(-zeta) * scaled`; zeta is 0 below the seam.
fn airy_scaled(x: f64) -> (f64, f64) {
    if x <= table::SEAM {
        (0.0, AnchorTable::get().eval(x).0)
    } else {
        let (zeta, s, _) = table::asymptotic_f64(x);
        (zeta, s)
    }
}

/// The shifted Airy function `2^{1/6} e^{tau x + 2 tau^3 / 3} Ai(x + tau^2)`.
///
/// The exponent is combined with the decay of Ai before exponentiating, so
/// large arguments that would overflow the prefactor alone are fine. An
/// error is raised when the result itself would not be representable.
pub fn airy_shifted(tau: f64, x: f64) -> Result<f64> {
    let z = x + tau * tau;
    if !z.is_finite() || z < AIRY_MIN {
        return Err(Error::domain("airy_shifted", z, AIRY_MIN, f64::INFINITY));
    }
    let expo = tau * x + 2.0 * tau * tau * tau / 3.0;
    if z > 1.0e6 {
        // Ai decays like exp(-2/3 z^{3/2}); nothing polynomial in tau can win.
        let log_mag = expo - 2.0 / 3.0 * z * z.sqrt();
        return if log_mag > 700.0 {
            Err(Error::Overflow {
                what: "airy_shifted",
                log_magnitude: log_mag,
            })
        } else {
            Ok(0.0)
        };
    }
    let (zeta, scaled) = airy_scaled(z);
    let e = expo - zeta;
    if scaled == 0.0 {
        return Ok(0.0);
    }
    let log_mag = e + scaled.abs().ln() + SIXTH_ROOT_2.ln();
    if !log_mag.is_finite() || log_mag > 709.0 {
        return Err(Error::Overflow {
            what: "airy_shifted",
            log_magnitude: log_mag,
        });
    }
    if e > 700.0 {
        Ok(SIXTH_ROOT_2 * scaled * (e - 50.0).exp() * 50f64.exp())
    } else {
        Ok(SIXTH_ROOT_2 * scaled * e.exp())
    }
}

/// Gaussian heat kernel `exp(-(x1-x2)^2 / (4 dt)) / sqrt(4 pi dt)`.
pub fn heat_kernel(dt: f64, x1: f64, x2: f64) -> Result<f64> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::domain(
            "heat_kernel",
            dt,
            f64::MIN_POSITIVE,
            f64::INFINITY,
        ));
    }
    let d = x1 - x2;
    Ok((-d * d / (4.0 * dt)).exp() / (4.0 * std::f64::consts::PI * dt).sqrt())
}

/// Pearcey phase `lambda^4 / 4 - tau lambda^2 / 2`.
pub fn pearcey_phase(lambda: Complex64, tau: f64) -> Complex64 {
    let l2 = lambda * lambda;
    l2 * l2 / 4.0 - l2 * (tau / 2.0)
}
