//! Double-double versions of the special functions.

use super::table::{self, AnchorTable};
use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};

/// Ai and Ai' in double-double for `x >= -32`. Values underflow to zero
/// far beyond the f64 window.
pub fn airy_dd(x: Dd) -> Result<(Dd, Dd)> {
    let xf = x.to_f64();
    if xf.is_nan() || xf < table::LEFT {
        return Err(Error::domain("airy_dd", xf, table::LEFT, f64::INFINITY));
    }
    if xf <= table::SEAM {
        return Ok(AnchorTable::get().eval_dd(x));
    }
    if xf > 1.0e6 {
        return Ok((Dd::ZERO, Dd::ZERO));
    }
    let (zeta, s, sp) = table::asymptotic_dd(x);
    let e = (-zeta).exp();
    Ok((s * e, sp * e))
}

/// `Ai^{(tau)}(x)` in double-double; see [`super::airy_shifted`].
pub fn airy_shifted_dd(tau: Dd, x: Dd) -> Result<Dd> {
    let z = x + tau.sqr();
    let zf = z.to_f64();
    if zf.is_nan() || zf < table::LEFT {
        return Err(Error::domain(
            "airy_shifted_dd",
            zf,
            table::LEFT,
            f64::INFINITY,
        ));
    }
    let expo = tau * x + tau * tau.sqr() * 2.0 / 3.0;
    if zf > 1.0e6 {
        let log_mag = expo.to_f64() - 2.0 / 3.0 * zf * zf.sqrt();
        return if log_mag > 700.0 {
            Err(Error::Overflow {
                what: "airy_shifted_dd",
                log_magnitude: log_mag,
            })
        } else {
            Ok(Dd::ZERO)
        };
    }
    let (zeta, scaled) = if zf <= table::SEAM {
        (Dd::ZERO, AnchorTable::get().eval_dd(z).0)
    } else {
        let (zeta, s, _) = table::asymptotic_dd(z);
        (zeta, s)
    };
    if scaled.hi() == 0.0 {
        return Ok(Dd::ZERO);
    }
    let e = expo - zeta;
    let log_mag = e.to_f64() + scaled.abs().to_f64().ln();
    if !log_mag.is_finite() || log_mag > 709.0 {
        return Err(Error::Overflow {
            what: "airy_shifted_dd",
            log_magnitude: log_mag,
        });
    }
    Ok(Dd::SIXTH_ROOT2 * scaled * e.exp())
}

pub fn heat_kernel_dd(dt: Dd, x1: Dd, x2: Dd) -> Result<Dd> {
    if !(dt.to_f64() > 0.0) {
        return Err(Error::domain(
            "heat_kernel_dd",
            dt.to_f64(),
            f64::MIN_POSITIVE,
            f64::INFINITY,
        ));
    }
    let d = x1 - x2;
    let g = (-(d.sqr() / (dt * 4.0))).exp();
    Ok(g / (Dd::PI * dt * 4.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::golden;

    #[test]
    fn agrees_with_golden_table() {
        let text = include_str!("../../tests/data/airy_golden.txt");
        for r in golden::read_table(text.as_bytes()).unwrap() {
            let (a, ap) = airy_dd(Dd::from_f64(r.x)).unwrap();
            assert!((a.to_f64() - r.ai).abs() < 1e-14, "x = {}", r.x);
            assert!((ap.to_f64() - r.ai_prime).abs() < 1e-14, "x = {}", r.x);
        }
    }

    #[test]
    fn matches_high_precision_values() {
        // mpmath at 50 digits, split into double-double parts
        let cases = [
            (
                -31.5,
                -0.15943432966207785,
                1.2818936702137936e-17,
                -0.9941412417257048,
                4.317623224955169e-17,
            ),
            (
                -14.25,
                -0.2524449594250075,
                5.755638250231247e-18,
                -0.5461190336351003,
                -1.4160949163156023e-17,
            ),
            (
                -7.5,
                0.3217757163806479,
                -1.6234025708206617e-17,
                0.3188095066985546,
                -2.7106192268279584e-17,
            ),
            (
                -0.375,
                0.44854446153764316,
                1.8291703717777302e-17,
                -0.22940458601462507,
                1.3771302315086316e-18,
            ),
            (
                2.5,
                0.01572592338047049,
                -1.213261004189717e-18,
                -0.026250881035903232,
                1.626539695319569e-18,
            ),
            (
                13.75,
                2.528600739926815e-16,
                1.874067302642454e-33,
                -9.42172935868171e-16,
                -4.942211131873475e-32,
            ),
            (
                20.0,
                1.6916728686705404e-27,
                -1.204637020510709e-43,
                -7.586391625748354e-27,
                -4.932340787025664e-43,
            ),
            (
                37.5,
                3.708501569400534e-68,
                -1.485631807074519e-84,
                -2.273449787890976e-67,
                2.402764337341803e-84,
            ),
        ];
        for (x, ah, al, dh, dl) in cases {
            let (a, ap) = airy_dd(Dd::from_f64(x)).unwrap();
            let ea = Dd::from_parts(ah, al);
            let ed = Dd::from_parts(dh, dl);
            let scale = ea.abs().to_f64().max(ed.abs().to_f64());
            assert!(
                (a - ea).abs().to_f64() < 1e-29 * scale,
                "Ai({x}): {:?}",
                a - ea
            );
            assert!(
                (ap - ed).abs().to_f64() < 1e-29 * scale,
                "Ai'({x}): {:?}",
                ap - ed
            );
        }
    }

    #[test]
    fn ode_holds_to_extended_precision() {
        // At h = 1e-6 the second difference is hopeless in f64 but resolves
        // y'' = x y to about 1e-11 in double-double.
        let h = Dd::from_f64(1e-6);
        for x in [-20.0, -7.3, 0.4, 9.9] {
            let x = Dd::from_f64(x);
            let (y0, _) = airy_dd(x).unwrap();
            let (yp, _) = airy_dd(x + h).unwrap();
            let (ym, _) = airy_dd(x - h).unwrap();
            let second = (yp - y0 * 2.0 + ym) / h.sqr();
            let rel = ((second - x * y0) / (x * y0)).abs().to_f64();
            assert!(rel < 1e-9, "{rel:e}");
        }
    }

    #[test]
    fn shifted_matches_f64_version() {
        for (tau, x) in [
            (0.0, 1.3),
            (1.0, 0.0),
            (-1.5, 4.0),
            (0.7, 40.0),
            (2.0, -5.0),
        ] {
            let a = airy_shifted_dd(Dd::from_f64(tau), Dd::from_f64(x))
                .unwrap()
                .to_f64();
            let b = crate::specfun::airy_shifted(tau, x).unwrap();
            assert!((a - b).abs() <= 1e-13 * b.abs(), "{tau} {x}: {a} {b}");
        }
    }

    #[test]
    fn heat_kernel_matches_f64_version() {
        let a = heat_kernel_dd(Dd::from_f64(0.7), Dd::from_f64(-1.0), Dd::from_f64(2.0)).unwrap();
        let b = crate::specfun::heat_kernel(0.7, -1.0, 2.0).unwrap();
        assert!((a.to_f64() - b).abs() < 1e-15 * b);
    }
}
