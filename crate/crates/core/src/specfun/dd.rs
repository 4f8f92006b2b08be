//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant digits. Only the operations needed by the kernels
//! are provided.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
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

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    /// ln(2π)/2
    pub const HALF_LN_2PI: Dd = Dd {
        hi: 0.9189385332046728,
        lo: -3.8782941580672414e-17,
    };
    pub const EULER: Dd = Dd {
        hi: 0.5772156649015329,
        lo: -4.942915152430645e-18,
    };

    #[inline]
    pub const fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact ratio of two integers representable in f64.
    pub fn ratio(num: f64, den: f64) -> Dd {
        Dd::new(num) / Dd::new(den)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(self.hi.sqrt());
        }
        let x = self.hi.sqrt();
        let r = self - Dd::from(two_prod(x, x));
        Dd::from_parts(x, r.hi / (2.0 * x))
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            Dd::from_parts(h, self.lo.floor())
        } else {
            Dd::new(h)
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::new(0.5)).floor()
    }

    pub fn powi(self, mut k: i32) -> Dd {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut base = self;
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            k >>= 1;
        }
        acc
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.7 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2 * k;
        // r/2^10 then square back up
        let s = r * (1.0 / 1024.0);
        let mut term = Dd::ONE;
        let mut sum = Dd::ZERO;
        for i in 1..=14 {
            term = term * s / (i as f64);
            sum += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // exp(s) - 1 = sum; (1+u)^2 - 1 = u(2+u)
        for _ in 0..10 {
            sum = sum * (sum + 2.0);
        }
        let e = sum + 1.0;
        Dd {
            hi: e.hi * 2f64.powi(k as i32),
            lo: e.lo * 2f64.powi(k as i32),
        }
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(f64::NAN);
        }
        let y = Dd::new(self.hi.ln());
        // one Newton step doubles the digits
        y + self * (-y).exp() - 1.0
    }

    /// (sin πx, cos πx) with exact reduction of the integer part.
    pub fn sin_cos_pi(self) -> (Dd, Dd) {
        let k = self.round();
        let t = self - k;
        let odd = (k.hi % 2.0 != 0.0) ^ (k.lo % 2.0 != 0.0);
        let a = Dd::PI * t;
        let a2 = a.sqr();
        let mut s = a;
        let mut term = a;
        let mut c = Dd::ONE;
        let mut cterm = Dd::ONE;
        for i in 1..40 {
            let i2 = (2 * i) as f64;
            term = -term * a2 / (i2 * (i2 + 1.0));
            cterm = -cterm * a2 / ((i2 - 1.0) * i2);
            s += term;
            c += cterm;
            if term.hi.abs() < 1e-36 && cterm.hi.abs() < 1e-36 {
                break;
            }
        }
        if odd {
            (-s, -c)
        } else {
            (s, c)
        }
    }

    /// π cot(πx).
    pub fn pi_cot_pi(self) -> Dd {
        let (s, c) = self.sin_cos_pi();
        Dd::PI * c / s
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl From<(f64, f64)> for Dd {
    fn from((hi, lo): (f64, f64)) -> Dd {
        Dd::from_parts(hi, lo)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (h, l) = quick_two_sum(s1, s2 + t2);
        Dd { hi: h, lo: l }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (h, l) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p1, p2);
        Dd { hi: h, lo: l }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self / Dd::new(b)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) { *self = *self $op b; }
        }
        impl $tr<f64> for Dd {
            #[inline]
            fn $m(&mut self, b: f64) { *self = *self $op b; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let t = Dd::ONE / 3.0;
        let e = t * 3.0 - 1.0;
        assert!(e.to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[0.1, 1.0, 2.5, 17.0, 300.0] {
            let d = Dd::new(x);
            let back = d.ln().exp();
            assert!(((back - d) / d).to_f64().abs() < 1e-30, "{x}");
        }
    }

    #[test]
    fn sqrt_two_squared() {
        let s = Dd::new(2.0).sqrt();
        assert!((s * s - 2.0).to_f64().abs() < 1e-31);
    }

    #[test]
    fn sin_pi_at_half_integers() {
        let (s, c) = Dd::new(2.5).sin_cos_pi();
        assert!((s - 1.0).to_f64().abs() < 1e-31);
        assert!(c.to_f64().abs() < 1e-31);
        let (s, _) = Dd::new(-3.5).sin_cos_pi();
        assert!((s - 1.0).to_f64().abs() < 1e-31);
    }
}
