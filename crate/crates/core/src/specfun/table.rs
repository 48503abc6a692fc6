//! Anchor table for Ai and Ai' in double-double precision.
//!
//! Anchors sit on a grid of spacing 1/4 over `[LEFT, SEAM]`. Values left of
//! the origin come from Taylor-stepping the Airy equation `y'' = x y` starting
//! at the closed-form values at 0 (the oscillatory side is neutrally stable).
//! Values right of the origin are stepped backward from the large-argument
//! expansion at `SEAM`, the direction in which the recessive solution is
//! stable. Any point in the table range is then one short Taylor expansion
//! away from an anchor.

use std::sync::OnceLock;

use crate::dd::DoubleDouble as Dd;

pub(crate) const SPACING: f64 = 0.25;
pub(crate) const LEFT: f64 = -32.0;
/// Above this point the asymptotic expansion is used directly.
pub(crate) const SEAM: f64 = 16.0;

pub(crate) const AI0: Dd = Dd::from_parts(0.3550280538878172, 2.05233632436212e-17);
pub(crate) const AIP0: Dd = Dd::from_parts(-0.2588194037928068, 2.522243111610832e-17);

pub(crate) struct AnchorTable {
    /// (Ai, Ai') at `LEFT + k * SPACING`.
    values: Vec<(Dd, Dd)>,
}

fn anchor_count() -> usize {
    ((SEAM - LEFT) / SPACING) as usize + 1
}

fn origin_index() -> usize {
    (-LEFT / SPACING) as usize
}

/// Taylor expansion of the Airy equation about `x0`, evaluated at `x0 + h`.
fn taylor_dd(x0: Dd, y: Dd, yp: Dd, h: Dd) -> (Dd, Dd) {
    // c_{k+2} = (x0 c_k + c_{k-1}) / ((k+2)(k+1))
    let mut c_prev = y; // c_{k-1}
    let mut c_cur = yp; // c_k
    let c2 = x0 * y / 2.0;
    let mut c_next = c2; // c_{k+1}
    let mut val = y + yp * h + c2 * h.sqr();
    let mut der = yp + c2 * h * 2.0;
    let mut hp = h.sqr(); // h^{k+1}
    let mut small = 0;
    for k in 1..200usize {
        let c = (x0 * c_cur + c_prev) / (((k + 2) * (k + 1)) as f64);
        let term_der = c * hp * ((k + 2) as f64);
        hp *= h;
        let term = c * hp;
        val += term;
        der += term_der;
        c_prev = c_cur;
        c_cur = c_next;
        c_next = c;
        let scale = val.abs().to_f64() + der.abs().to_f64() + 1e-300;
        if term.abs().to_f64() < 1e-35 * scale && term_der.abs().to_f64() < 1e-35 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (val, der)
}

/// Large-argument expansion, returned as `(zeta, s_ai, s_aip)` with
/// `Ai(x) = e^{-zeta} s_ai` and `Ai'(x) = e^{-zeta} s_aip`.
pub(crate) fn asymptotic_dd(x: Dd) -> (Dd, Dd, Dd) {
    let sx = x.sqrt();
    let q = sx.sqrt(); // x^{1/4}
    let zeta = x * sx * 2.0 / 3.0;
    let mut u = Dd::ONE;
    let mut sum_u = Dd::ONE;
    let mut sum_v = Dd::ONE;
    let mut zp = Dd::ONE;
    let inv = zeta.recip();
    for k in 1..80usize {
        let kf = k as f64;
        u = u * ((6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0))
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        zp = -zp * inv;
        let tu = u * zp;
        let tv = v * zp;
        sum_u += tu;
        sum_v += tv;
        if tu.abs().to_f64() < 1e-34 && tv.abs().to_f64() < 1e-34 {
            break;
        }
    }
    let s_ai = Dd::INV_2SQRTPI * sum_u / q;
    let s_aip = -(Dd::INV_2SQRTPI * q * sum_v);
    (zeta, s_ai, s_aip)
}

pub(crate) fn asymptotic_f64(x: f64) -> (f64, f64, f64) {
    let sx = x.sqrt();
    let q = sx.sqrt();
    let zeta = 2.0 / 3.0 * x * sx;
    let (mut u, mut sum_u, mut sum_v, mut zp) = (1.0f64, 1.0f64, 1.0f64, 1.0f64);
    for k in 1..40usize {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        zp *= -1.0 / zeta;
        sum_u += u * zp;
        sum_v += v * zp;
        if (u * zp).abs() < 1e-18 && (v * zp).abs() < 1e-18 {
            break;
        }
    }
    let c = Dd::INV_2SQRTPI.to_f64();
    (zeta, c * sum_u / q, -c * q * sum_v)
}

impl AnchorTable {
    fn build() -> Self {
        let n = anchor_count();
        let origin = origin_index();
        let mut values = vec![(Dd::ZERO, Dd::ZERO); n];
        let h = Dd::from_f64(-SPACING);

        values[origin] = (AI0, AIP0);
        for k in (0..origin).rev() {
            let x0 = Dd::from_f64(LEFT + (k + 1) as f64 * SPACING);
            let (y, yp) = values[k + 1];
            values[k] = taylor_dd(x0, y, yp, h);
        }

        let (zeta, s_ai, s_aip) = asymptotic_dd(Dd::from_f64(SEAM));
        let e = (-zeta).exp();
        values[n - 1] = (s_ai * e, s_aip * e);
        for k in (origin + 1..n - 1).rev() {
            let x0 = Dd::from_f64(LEFT + (k + 1) as f64 * SPACING);
            let (y, yp) = values[k + 1];
            values[k] = taylor_dd(x0, y, yp, h);
        }
        AnchorTable { values }
    }

    pub(crate) fn get() -> &'static AnchorTable {
        static TABLE: OnceLock<AnchorTable> = OnceLock::new();
        TABLE.get_or_init(AnchorTable::build)
    }

    /// Ai and Ai' in double-double, `LEFT <= x <= SEAM`.
    pub(crate) fn eval_dd(&self, x: Dd) -> (Dd, Dd) {
        let k = ((x.to_f64() - LEFT) / SPACING).round() as usize;
        let k = k.min(self.values.len() - 1);
        let x0 = LEFT + k as f64 * SPACING;
        let (y, yp) = self.values[k];
        taylor_dd(Dd::from_f64(x0), y, yp, x - x0)
    }

    /// Ai and Ai' in f64, `LEFT <= x <= SEAM`.
    pub(crate) fn eval(&self, x: f64) -> (f64, f64) {
        let k = ((x - LEFT) / SPACING).round() as usize;
        let k = k.min(self.values.len() - 1);
        let x0 = LEFT + k as f64 * SPACING;
        let h = x - x0;
        let (y, yp) = self.values[k];
        let (y, yp) = (y.to_f64(), yp.to_f64());
        if h == 0.0 {
            return (y, yp);
        }
        let mut c_prev = y;
        let mut c_cur = yp;
        let c2 = x0 * y / 2.0;
        let mut c_next = c2;
        let mut val = y + h * (yp + h * c2);
        let mut der = yp + 2.0 * h * c2;
        let mut hp = h * h;
        let mut small = 0;
        for k in 1..40usize {
            let c = (x0 * c_cur + c_prev) / (((k + 2) * (k + 1)) as f64);
            let td = c * hp * (k + 2) as f64;
            hp *= h;
            let t = c * hp;
            val += t;
            der += td;
            c_prev = c_cur;
            c_cur = c_next;
            c_next = c;
            // Every third coefficient vanishes when x0 = 0.
            if t.abs() < 1e-19 * (val.abs() + 1e-300) && td.abs() < 1e-19 * (der.abs() + 1e-300) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        (val, der)
    }

    #[cfg(test)]
    pub(crate) fn anchor(&self, x: f64) -> (Dd, Dd) {
        let k = ((x - LEFT) / SPACING).round() as usize;
        self.values[k]
    }
}
