//! Double-double arithmetic.
//!
//! A [`DoubleDouble`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand. Only what the extended-precision
//! determinant path needs is provided: field operations, `sqrt`, `exp` and a
//! handful of constants.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const LN2: Self = Self::from_parts(std::f64::consts::LN_2, 2.3190468138462996e-17);
    pub const PI: Self = Self::from_parts(std::f64::consts::PI, 1.2246467991473532e-16);
    pub const CBRT2: Self = Self::from_parts(1.2599210498948732, -2.589933375300507e-17);
    pub const CBRT4: Self = Self::from_parts(1.5874010519681996, -1.0869008194197823e-16);
    pub const SIXTH_ROOT2: Self = Self::from_parts(1.122462048309373, -3.578507116853557e-17);
    /// 1/(2 sqrt(pi))
    pub const INV_2SQRTPI: Self = Self::from_parts(0.28209479177387814, 3.83386490329147e-18);

    /// Builds a value from an already normalized pair.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        if self.hi == 0.0 {
            self.lo.signum()
        } else {
            self.hi.signum()
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(self, k: i32) -> Self {
        let mut out = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = Self {
                hi: out.hi * f,
                lo: out.lo * f,
            };
            k -= step;
        }
        out
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Self::ZERO
            } else {
                Self::from_f64(f64::NAN)
            };
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = (self - Self::from_parts(p, e)).to_f64();
        let (hi, lo) = quick_two_sum(s, r / (2.0 * s));
        Self { hi, lo }
    }

    /// `e^x`, relative error a few units of 2^-104 for moderate arguments.
    pub fn exp(self) -> Self {
        if self.hi > 709.8 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        let k = (self.hi / Self::LN2.hi).round();
        let r = (self - Self::LN2 * k).ldexp(-10);
        // e^r - 1 by Taylor; |r| < 3.4e-4 so 12 terms suffice.
        let mut term = r;
        let mut sum = r;
        for n in 2..=14 {
            term = term * r / (n as f64);
            sum += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1+s)^2 - 1 = s (2 + s), applied ten times.
        for _ in 0..10 {
            sum = sum * (sum + 2.0);
        }
        (sum + 1.0).ldexp(k as i32)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / Self::from_f64(rhs)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, rhs: Self) { *self = *self $op rhs; }
        }
        impl $tr<f64> for DoubleDouble {
            fn $m(&mut self, rhs: f64) { *self = *self $op rhs; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl std::iter::Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}
