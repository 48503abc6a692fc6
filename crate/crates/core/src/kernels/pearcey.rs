use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fredholm::BlockKernel;
use crate::quadrature::{DomainComponent, DomainKind};
use crate::specfun::pearcey_phase;

/// Block indices of the three contour pieces.
pub const LEFT: usize = 0;
pub const AXIS: usize = 1;
pub const RIGHT: usize = 2;

/// Largest real part of an exponent the kernel will exponentiate.
const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PearceyParams {
    pub tau: f64,
    /// Sorted endpoints `a_1 < ... < a_{2N}` of the gap set.
    pub endpoints: Vec<f64>,
}

impl PearceyParams {
    pub fn new(tau: f64, endpoints: Vec<f64>) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::argument("pearcey: tau must be finite"));
        }
        if !endpoints.len().is_multiple_of(2) {
            return Err(Error::argument("pearcey: endpoint count must be even"));
        }
        if endpoints.iter().any(|a| !a.is_finite()) || endpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::argument(
                "pearcey: endpoints must be finite and strictly increasing",
            ));
        }
        Ok(PearceyParams { tau, endpoints })
    }
}

/// A point on one of the contours, tagged by whether it lies on the
/// imaginary axis or on a hyperbola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourPoint {
    pub point: Complex64,
    pub on_axis: bool,
}

fn checked_exp(e: Complex64) -> Result<Complex64> {
    if e.re > MAX_EXPONENT {
        return Err(Error::Overflow {
            what: "pearcey_kernel",
            log_magnitude: e.re,
        });
    }
    Ok(e.exp())
}

/// The Pearcey contour kernel `K(lambda, mu)`.
///
/// Nonzero only when exactly one of the two points is on the imaginary
/// axis. The sign of the `j`-th endpoint term is `(-1)^j` with `j` counted
/// from 1.
pub fn pearcey_kernel(
    lp: ContourPoint,
    mp: ContourPoint,
    params: &PearceyParams,
) -> Result<Complex64> {
    let (l, m) = (lp.point, mp.point);
    let num = match (lp.on_axis, mp.on_axis) {
        (false, true) => {
            let e = (pearcey_phase(l, params.tau) - pearcey_phase(m, params.tau)) / 2.0;
            checked_exp(e)?
        }
        (true, false) => {
            let base = (pearcey_phase(m, params.tau) - pearcey_phase(l, params.tau)) / 2.0;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &a) in params.endpoints.iter().enumerate() {
                let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * checked_exp(base + a * (l - m))?;
            }
            -s
        }
        _ => return Ok(Complex64::new(0.0, 0.0)),
    };
    Ok(num / ((l - m) * Complex64::new(0.0, 2.0 * PI)))
}

/// [`pearcey_kernel`] on the blocks [`LEFT`], [`AXIS`], [`RIGHT`].
#[derive(Debug, Clone)]
pub struct PearceyKernel {
    pub params: PearceyParams,
}

impl BlockKernel for PearceyKernel {
    fn entry(&self, i: usize, j: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
        pearcey_kernel(
            ContourPoint {
                point: x,
                on_axis: i == AXIS,
            },
            ContourPoint {
                point: y,
                on_axis: j == AXIS,
            },
            &self.params,
        )
    }
}

/// Parametrization used for the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisMap {
    #[default]
    Tangent,
    Algebraic,
}

/// The contours `gamma_L`, `iR`, `gamma_R` as domain components.
pub fn pearcey_domains(axis: AxisMap) -> Vec<DomainComponent> {
    let axis_kind = match axis {
        AxisMap::Tangent => DomainKind::ContourImag,
        AxisMap::Algebraic => DomainKind::ContourImagAlgebraic,
    };
    vec![
        DomainComponent::contour(DomainKind::ContourLeft, "gamma_L", LEFT).unwrap(),
        DomainComponent::contour(axis_kind, "iR", AXIS).unwrap(),
        DomainComponent::contour(DomainKind::ContourRight, "gamma_R", RIGHT).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::Discretization;

    fn on(point: Complex64, on_axis: bool) -> ContourPoint {
        ContourPoint { point, on_axis }
    }

    #[test]
    fn vanishes_unless_exactly_one_point_is_on_the_axis() {
        let p = PearceyParams::new(1.0, vec![-1.0, 1.0]).unwrap();
        let a = Complex64::new(1.0, 0.3);
        let b = Complex64::new(1.4, -0.2);
        assert_eq!(
            pearcey_kernel(on(a, false), on(b, false), &p).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let a = Complex64::new(0.0, 0.3);
        let b = Complex64::new(0.0, -2.0);
        assert_eq!(
            pearcey_kernel(on(a, true), on(b, true), &p).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn independent_evaluation_at_a_sample_point() {
        let p = PearceyParams::new(0.0, vec![-1.0, 1.0]).unwrap();
        let l = Complex64::new(1.0, 0.0);
        let m = Complex64::new(0.0, 1.0);
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        // lambda on gamma_R, mu on iR: only the first term survives.
        let th = |z: Complex64| z.powi(4) / 4.0;
        let expect = ((th(l) - th(m)) / 2.0).exp() / (l - m) / two_pi_i;
        let got = pearcey_kernel(on(l, false), on(m, true), &p).unwrap();
        assert!((got - expect).norm() < 1e-15);
        // swapped roles: the endpoint sum with signs -1 for a_1, +1 for a_2.
        let base = (th(l) - th(m)) / 2.0;
        let sum = -(base + (-1.0) * (m - l)).exp() + (base + 1.0 * (m - l)).exp();
        let expect = -sum / (m - l) / two_pi_i;
        let got = pearcey_kernel(on(m, true), on(l, false), &p).unwrap();
        assert!((got - expect).norm() < 1e-15);
    }

    #[test]
    fn bounded_on_default_nodes() {
        let d = pearcey_domains(AxisMap::Tangent);
        let disc = Discretization::new(&d, 60).unwrap();
        for tau in [0.0, 2.0, 4.0, 6.0] {
            let k = PearceyKernel {
                params: PearceyParams::new(tau, vec![-1.5, 0.5]).unwrap(),
            };
            for p in 0..disc.len() {
                for q in 0..disc.len() {
                    let v = k
                        .entry(
                            disc.blocks[p],
                            disc.blocks[q],
                            disc.points[p],
                            disc.points[q],
                        )
                        .unwrap();
                    assert!(v.norm() <= 1.0, "tau {tau}: |K| = {}", v.norm());
                }
            }
        }
    }

    #[test]
    fn params_are_validated() {
        assert!(PearceyParams::new(1.0, vec![1.0]).is_err());
        assert!(PearceyParams::new(1.0, vec![1.0, 0.0]).is_err());
        assert!(PearceyParams::new(f64::NAN, vec![]).is_err());
    }
}
