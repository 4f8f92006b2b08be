//! Tricomi's function U(a, b, x) for integer b ≥ 1 and x > 0.
//!
//! Three evaluation routes:
//! * the logarithmic-case expansion (double-double) when its cancellation is mild,
//! * the integral Γ(a)U = ∫₀^∞ e^{−xt} t^{a−1} (1+t)^{b−a−1} dt for a ≥ 1,
//!   trapezoid rule in s = ln t,
//! * downward recurrence in `a` from two quadrature values otherwise.
//!
//! Most callers want the combination V(a) = Γ(a)U(a, b, x), which stays in
//! range where U alone overflows; it is exposed as [`gamma_scaled_u`].

use super::dd::Dd;
use super::gamma::{digamma_dd, log_gamma_dd};
use super::kummer::kummer_m;
use crate::error::{Error, Result};

const MAX_SERIES_TERMS: usize = 20_000;
/// Largest tolerated ratio of the biggest series term to the result.
const SERIES_CANCEL_LIMIT: f64 = 1e18;
const QUAD_MAX_STEPS: usize = 200_000;

fn check_args(b: f64, x: f64) -> Result<usize> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("tricomi x = {x}")));
    }
    if b < 1.0 || b != b.floor() {
        return Err(Error::Domain(format!("tricomi b = {b} (positive integer required)")));
    }
    Ok(b as usize - 1)
}

fn nonpositive_integer(a: f64) -> Option<usize> {
    if a <= 0.0 && a == a.floor() {
        Some((-a) as usize)
    } else {
        None
    }
}

/// Γ(a)U(a, n+1, x) from the logarithmic-case expansion.
///
/// Γ(a)/Γ(a−n) is the polynomial (a−1)…(a−n), so no gamma function enters.
/// Returns the value and the magnitude of its largest constituent.
fn log_case_scaled(a: Dd, n: usize, x: Dd) -> Result<(Dd, f64)> {
    let lnx = x.ln();
    let mut psi_a = digamma_dd(a)?;
    let mut psi_1 = -Dd::EULER;
    let mut psi_n1 = -Dd::EULER;
    for j in 1..=n {
        psi_n1 += Dd::ONE / j as f64;
    }
    let mut term = Dd::ONE;
    let mut sum = Dd::ZERO;
    let mut big = 0.0f64;
    let a_neg = (-a.hi).max(0.0);
    let mut converged = false;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let piece = term * (lnx + psi_a - psi_1 - psi_n1);
        sum += piece;
        big = big.max(piece.hi.abs());
        if kf > a_neg && piece.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) {
            converged = true;
            break;
        }
        term = term * (a + kf) * x / ((n as f64 + 1.0 + kf) * (kf + 1.0));
        psi_a += (a + kf).recip();
        psi_1 += Dd::ONE / (kf + 1.0);
        psi_n1 += Dd::ONE / (n as f64 + kf + 1.0);
    }
    if !converged {
        return Err(Error::NonConvergence(format!("log-case U series a={}", a.hi)));
    }
    // (−1)^{n+1} (a−1)…(a−n) / n!
    let mut pref = Dd::ONE;
    for j in 1..=n {
        pref = pref * (a - j as f64) / j as f64;
    }
    if (n + 1) % 2 == 1 {
        pref = -pref;
    }
    let mut total = pref * sum;
    big *= pref.hi.abs();
    // Σ_{k=1}^{n} (k−1)! (1−a+k)_{n−k} / (n−k)! · x^{−k}
    let inv_x = x.recip();
    let mut xp = Dd::ONE;
    for k in 1..=n {
        xp *= inv_x;
        let mut c = Dd::ONE;
        for j in 1..k {
            c *= j as f64;
        }
        for j in 0..(n - k) {
            c *= Dd::ONE - a + (k + j) as f64;
        }
        for j in 1..=(n - k) {
            c /= j as f64;
        }
        let t = c * xp;
        big = big.max(t.hi.abs());
        total += t;
    }
    Ok((total, big))
}

/// ln(Γ(a)U(a, b, x)) for a > 0 by the trapezoid rule in s = ln t.
pub fn ln_gamma_scaled_u_quad(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("quadrature route needs a > 0, got {a}")));
    }
    let c = b - a - 1.0;
    let ln1pexp = |s: f64| {
        if s > 0.0 {
            s + (-s).exp().ln_1p()
        } else {
            s.exp().ln_1p()
        }
    };
    let phi = |s: f64| -x * s.exp() + a * s + c * ln1pexp(s);
    // stationary point: x t² − (b−1−x) t − a = 0
    let p = b - 1.0 - x;
    let t_star = (p + (p * p + 4.0 * a * x).sqrt()) / (2.0 * x);
    let s_star = t_star.ln();
    let sig = t_star / (1.0 + t_star);
    let curv = x * t_star - c * sig * (1.0 - sig);
    let width = 1.0 / curv.max(1e-300).sqrt();
    let h = (width / 3.0).min(0.1);
    let phi0 = phi(s_star);
    let mut sum = 1.0;
    for dir in [-1.0, 1.0] {
        let mut j = 1usize;
        loop {
            let e = (phi(s_star + dir * j as f64 * h) - phi0).exp();
            sum += e;
            if (e < 1e-19 && j as f64 * h > 3.0 * width) || j > QUAD_MAX_STEPS {
                break;
            }
            j += 1;
        }
        if j > QUAD_MAX_STEPS {
            return Err(Error::NonConvergence(format!("U quadrature a={a} b={b} x={x}")));
        }
    }
    Ok(phi0 + (h * sum).ln())
}

/// V(a) = Γ(a)U(a, b, x) at `a_lo`, `a_lo+1`, …, `a_lo+count−1`.
///
/// Values are generated by downward recurrence
/// `(a−1)V(a−1) = −(b−2a−x)V(a) − (a−b+1)V(a+1)` from two quadrature
/// values at a ≥ 1. Downward is the stable direction: V is minimal as a → ∞.
pub fn gamma_scaled_u_ascending(a_lo: f64, b: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    check_args(b, x)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let a_hi = a_lo + (count - 1) as f64;
    let top = if a_hi >= 1.0 {
        a_hi
    } else {
        a_hi + (1.0 - a_hi).ceil()
    };
    let mut up = ln_gamma_scaled_u_quad(top + 1.0, b, x)?.exp();
    let mut cur = ln_gamma_scaled_u_quad(top, b, x)?.exp();
    let mut a = top;
    let mut out = vec![0.0; count];
    loop {
        if a <= a_hi + 0.5 {
            let idx = (a - a_lo).round() as usize;
            out[idx] = cur;
        }
        if a <= a_lo + 0.5 {
            break;
        }
        if (a - 1.0) == 0.0 {
            return Err(Error::Pole(format!("Γ(a)U(a,b,x) at a = 0 (a_lo = {a_lo})")));
        }
        let next = -((b - 2.0 * a - x) * cur + (a - b + 1.0) * up) / (a - 1.0);
        up = cur;
        cur = next;
        a -= 1.0;
    }
    Ok(out)
}

/// V(a) = Γ(a)U(a, b, x) for integer b ≥ 1, x > 0; pole at a ∈ {0, −1, …}.
pub fn gamma_scaled_u(a: f64, b: f64, x: f64) -> Result<f64> {
    let n = check_args(b, x)?;
    if nonpositive_integer(a).is_some() {
        return Err(Error::Pole(format!("Γ(a) at a = {a}")));
    }
    if a >= 1.0 {
        return Ok(ln_gamma_scaled_u_quad(a, b, x)?.exp());
    }
    if 2.0 * (a.abs() * x).sqrt() < 40.0 && x < 30.0 {
        let (v, big) = log_case_scaled(Dd::new(a), n, Dd::new(x))?;
        if big <= SERIES_CANCEL_LIMIT * v.hi.abs() {
            return Ok(v.to_f64());
        }
    }
    let steps = (1.0 - a).ceil() as usize;
    let seq = gamma_scaled_u_ascending(a, b, x, steps + 1)?;
    Ok(seq[0])
}

/// U(a, b, x) for integer b ≥ 1, x > 0.
pub fn tricomi_u(a: f64, b: f64, x: f64) -> Result<f64> {
    check_args(b, x)?;
    if !a.is_finite() {
        return Err(Error::Domain(format!("tricomi a = {a}")));
    }
    if let Some(k) = nonpositive_integer(a) {
        // U(−k, b, x) = (−1)^k (b)_k M(−k, b, x)
        let mut poch = 1.0;
        for j in 0..k {
            poch *= b + j as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * poch * kummer_m(a, b, x)?);
    }
    let v = gamma_scaled_u(a, b, x)?;
    let (lg, sg) = log_gamma_dd(Dd::new(a))?;
    let lg = lg.to_f64();
    if v == 0.0 {
        return Ok(0.0);
    }
    let out = v.signum() * sg as f64 * (v.abs().ln() - lg).exp();
    if !out.is_finite() {
        return Err(Error::Overflow(format!("U({a}, {b}, {x})")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_at_a_zero_is_one() {
        for &x in &[0.01, 1.0, 7.5] {
            assert!((tricomi_u(0.0, 3.0, x).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn laguerre_case() {
        assert!((tricomi_u(-1.0, 2.0, 3.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn series_and_recurrence_agree() {
        for &(a, b, x) in &[(-3.3, 2.0, 1.7), (0.4, 4.0, 0.3), (-7.5, 8.0, 5.0)] {
            let n = b as usize - 1;
            let (s, _) = log_case_scaled(Dd::new(a), n, Dd::new(x)).unwrap();
            let steps = (1.0 - a).ceil() as usize;
            let r = gamma_scaled_u_ascending(a, b, x, steps + 1).unwrap()[0];
            assert!((s.to_f64() / r - 1.0).abs() < 1e-11, "{a} {b} {x}: {s:?} {r}");
        }
    }

    #[test]
    fn rejects_bad_args() {
        assert!(tricomi_u(0.5, 2.0, 0.0).is_err());
        assert!(tricomi_u(0.5, 2.5, 1.0).is_err());
    }
}
