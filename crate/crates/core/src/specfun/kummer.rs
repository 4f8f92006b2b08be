//! Kummer's function M(a, b, x) for real arguments.

use super::dd::Dd;
use crate::error::{Error, Result};

/// Estimated cancellation (in e-folds) above which the power series is not
/// attempted.
const SERIES_LOSS_LIMIT: f64 = 60.0;
/// Largest tolerated ratio of the biggest series term to the sum.
const SERIES_CANCEL_LIMIT: f64 = 1e19;
const MAX_TERMS: usize = 20_000;

fn check_b(b: f64) -> Result<()> {
    if !b.is_finite() || (b <= 0.0 && b == b.floor()) {
        return Err(Error::Domain(format!("kummer b = {b}")));
    }
    Ok(())
}

/// Power series in double-double. Returns the sum and the largest term
/// magnitude, so callers can judge the cancellation.
pub fn kummer_series_dd(a: Dd, b: f64, x: Dd) -> Result<(Dd, f64)> {
    check_b(b)?;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut big = 1.0f64;
    let a_neg = (-a.hi).max(0.0);
    for r in 0..MAX_TERMS {
        let rf = r as f64;
        let num = a + rf;
        if num.hi == 0.0 && num.lo == 0.0 {
            return Ok((sum, big));
        }
        term = term * num * x / ((b + rf) * (rf + 1.0));
        sum += term;
        big = big.max(term.hi.abs());
        if rf > a_neg && term.hi.abs() <= 1e-34 * sum.hi.abs() {
            return Ok((sum, big));
        }
    }
    Err(Error::NonConvergence(format!(
        "kummer series a={} b={b} x={}",
        a.hi, x.hi
    )))
}

/// M(a, b, x) to roughly double-double accuracy (series only).
pub fn kummer_m_dd(a: Dd, b: f64, x: Dd) -> Result<Dd> {
    Ok(kummer_series_dd(a, b, x)?.0)
}

/// e-folds of cancellation expected in the series for a < 0.
fn series_loss(a: f64, x: f64) -> f64 {
    if a >= 0.0 || x <= 0.0 {
        0.0
    } else {
        2.0 * (-a * x).sqrt()
    }
}

/// M(a, b, x).
///
/// Power series in double-double; for large negative `a` the series is
/// started near `a = 0` and carried down by the contiguous relation
/// `(b−a)M(a−1) = a M(a+1) − (2a−b+x) M(a)`.
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64> {
    check_b(b)?;
    if !a.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!("kummer a={a} x={x}")));
    }
    if series_loss(a, x) < SERIES_LOSS_LIMIT {
        let (s, big) = kummer_series_dd(Dd::new(a), b, Dd::new(x))?;
        if big <= SERIES_CANCEL_LIMIT * s.hi.abs() {
            return Ok(s.to_f64());
        }
    }
    let steps = (-a).floor();
    let a0 = a + steps;
    let mut hi = kummer_m_dd(Dd::new(a0 + 1.0), b, Dd::new(x))?.to_f64();
    let mut cur = kummer_m_dd(Dd::new(a0), b, Dd::new(x))?.to_f64();
    let mut ac = a0;
    for _ in 0..steps as usize {
        let next = (ac * hi - (2.0 * ac - b + x) * cur) / (b - ac);
        hi = cur;
        cur = next;
        ac -= 1.0;
    }
    Ok(cur)
}

/// M(a − j, b, x) for j = 0..count, obtained from the same recurrence.
/// Requires `a ≤ 0` so that every step divides by `b − a > 0`.
pub fn kummer_m_descending(a: f64, b: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    check_b(b)?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let mut hi = kummer_m(a + 1.0, b, x)?;
    let mut cur = kummer_m(a, b, x)?;
    let mut ac = a;
    out.push(cur);
    for _ in 1..count {
        let next = (ac * hi - (2.0 * ac - b + x) * cur) / (b - ac);
        hi = cur;
        cur = next;
        ac -= 1.0;
        out.push(cur);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(kummer_m(0.7, 1.3, 0.0).unwrap(), 1.0);
        assert!((kummer_m(2.0, 2.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
        assert!((kummer_m(-2.0, 1.0, 1.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn bad_b() {
        assert!(kummer_m(1.0, -2.0, 1.0).is_err());
    }
}
