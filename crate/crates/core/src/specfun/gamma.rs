//! Gamma and digamma functions.
//!
//! Both are evaluated in double-double: upward recurrence to a large
//! argument, Stirling / asymptotic series there, reflection for x < 1/2.

use super::dd::Dd;
use super::signed_log::SignedLogValue;
use crate::error::{Error, Result};

const STIRLING_SHIFT: f64 = 30.0;

/// B_{2k} as exact numerator/denominator pairs, k = 1..13.
const BERNOULLI: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

const POLE_TOL: f64 = 1e-12;

fn is_nonpositive_integer(x: f64) -> bool {
    x.round() <= 0.0 && (x - x.round()).abs() < POLE_TOL
}

/// ln Γ(x) for x > 0.
fn ln_gamma_pos(x: Dd) -> Dd {
    let mut z = x;
    let mut prod = Dd::ONE;
    let mut log_acc = Dd::ZERO;
    while z.hi < STIRLING_SHIFT {
        prod *= z;
        if prod.hi > 1e250 {
            log_acc += prod.ln();
            prod = Dd::ONE;
        }
        z += 1.0;
    }
    log_acc += prod.ln();
    let inv = z.recip();
    let inv2 = inv.sqr();
    let mut series = Dd::ZERO;
    let mut pw = inv;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        let term = Dd::ratio(num, den) * pw / ((2.0 * k) * (2.0 * k - 1.0));
        series += term;
        if term.hi.abs() < 1e-34 {
            break;
        }
        pw *= inv2;
    }
    (z - 0.5) * z.ln() - z + Dd::HALF_LN_2PI + series - log_acc
}

/// Γ(x) as sign and ln|Γ(x)|, pole error at nonpositive integers.
pub fn log_gamma_signed(x: f64) -> Result<SignedLogValue> {
    let (v, s) = log_gamma_dd(Dd::new(x))?;
    Ok(SignedLogValue::new(v.to_f64(), s))
}

/// ln|Γ(x)| in double-double with the sign of Γ(x).
pub fn log_gamma_dd(x: Dd) -> Result<(Dd, i8)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument {x}")));
    }
    if is_nonpositive_integer(x.hi) {
        return Err(Error::Pole(format!("gamma at {}", x.hi)));
    }
    if x.hi >= 0.5 {
        return Ok((ln_gamma_pos(x), 1));
    }
    // Γ(x)Γ(1−x) = π / sin(πx)
    let (s, _) = x.sin_cos_pi();
    if s.hi == 0.0 {
        return Err(Error::Pole(format!("gamma at {x}")));
    }
    let l = Dd::PI.ln() - s.abs().ln() - ln_gamma_pos(Dd::ONE - x);
    Ok((l, if s.hi > 0.0 { 1 } else { -1 }))
}

/// Γ(x) as f64; may overflow.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma_signed(x)?.to_f64())
}

/// ψ(x) in double-double.
pub fn digamma_dd(x: Dd) -> Result<Dd> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("digamma argument {x}")));
    }
    if is_nonpositive_integer(x.hi) {
        return Err(Error::Pole(format!("digamma at {}", x.hi)));
    }
    if x.hi < 0.5 {
        // ψ(x) = ψ(1−x) − π cot(πx)
        let (s, c) = x.sin_cos_pi();
        if s.hi == 0.0 {
            return Err(Error::Pole(format!("digamma at {x}")));
        }
        return Ok(digamma_dd(Dd::ONE - x)? - Dd::PI * c / s);
    }
    let mut z = x;
    let mut acc = Dd::ZERO;
    while z.hi < STIRLING_SHIFT {
        acc += z.recip();
        z += 1.0;
    }
    let inv = z.recip();
    let inv2 = inv.sqr();
    let mut series = Dd::ZERO;
    let mut pw = inv2;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = 2.0 * (k + 1) as f64;
        let term = Dd::ratio(num, den) * pw / k2;
        series += term;
        if term.hi.abs() < 1e-34 {
            break;
        }
        pw *= inv2;
    }
    Ok(z.ln() - inv * 0.5 - series - acc)
}

/// ψ(x) in double precision.
pub fn digamma(x: f64) -> Result<f64> {
    Ok(digamma_dd(Dd::new(x))?.to_f64())
}

/// Falling factorial x(x−1)…(x−k+1) = Γ(1+x)/Γ(1+x−k).
pub fn falling(x: Dd, k: usize) -> Dd {
    let mut p = Dd::ONE;
    for i in 0..k {
        p *= x - i as f64;
    }
    p
}

/// k! in double-double (exact below 23!).
pub fn factorial_dd(k: usize) -> Dd {
    let mut p = Dd::ONE;
    for i in 2..=k {
        p *= i as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        for k in 1..15usize {
            let g = gamma(k as f64 + 1.0).unwrap();
            let f: f64 = (1..=k).map(|i| i as f64).product();
            assert!((g / f - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn digamma_one_is_minus_euler() {
        let v = digamma_dd(Dd::ONE).unwrap() + Dd::EULER;
        assert!(v.to_f64().abs() < 1e-30);
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(log_gamma_signed(-3.0), Err(Error::Pole(_))));
        assert!(matches!(digamma(0.0), Err(Error::Pole(_))));
    }
}
