use std::fmt;
use std::ops::{Div, Mul};

/// A real number stored as `sign * exp(log_abs)`.
///
/// Products and quotients never overflow; `sign == 0` encodes an exact zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogValue {
    pub log_abs: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: SignedLogValue = SignedLogValue {
        log_abs: f64::NEG_INFINITY,
        sign: 0,
    };
    pub const ONE: SignedLogValue = SignedLogValue {
        log_abs: 0.0,
        sign: 1,
    };

    pub fn new(log_abs: f64, sign: i8) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            SignedLogValue {
                log_abs,
                sign: sign.signum(),
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLogValue {
                log_abs: x.abs().ln(),
                sign: if x > 0.0 { 1 } else { -1 },
            }
        }
    }

    /// May overflow to ±inf or underflow to 0.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.sign as f64 * self.log_abs.exp()
        }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        SignedLogValue {
            log_abs: -self.log_abs,
            sign: self.sign,
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        SignedLogValue {
            log_abs: self.log_abs * k as f64,
            sign,
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }
}

impl Mul for SignedLogValue {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        if self.sign == 0 || b.sign == 0 {
            return Self::ZERO;
        }
        SignedLogValue {
            log_abs: self.log_abs + b.log_abs,
            sign: self.sign * b.sign,
        }
    }
}

impl Mul<f64> for SignedLogValue {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        self * SignedLogValue::from_f64(b)
    }
}

impl Div for SignedLogValue {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        self * b.recip()
    }
}

impl fmt::Display for SignedLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let dec = self.log_abs / std::f64::consts::LN_10;
                let e = dec.floor();
                let mant = 10f64.powf(dec - e) * s as f64;
                write!(f, "{mant:.12}e{e}")
            }
        }
    }
}
