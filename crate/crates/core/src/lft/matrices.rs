//! Frame-transformation coefficients between spherical and parabolic
//! Coulomb functions.
//!
//! Every Γ ratio with an integer argument difference is written as a
//! falling factorial and evaluated in double-double, so denominator poles
//! become exact zeros and no log-domain round trip is needed.

use crate::coulomb::{norm_nlm_dd, norm_nn1_sq_dd, wronskian_w, QuantumContext};
use crate::error::{Error, Result};
use crate::specfun::gamma::factorial_dd;
use crate::specfun::{digamma_dd, falling, log_gamma_signed, Dd, SignedLogValue};

/// p-sum coefficients of A for one l:
/// (−1)^{p+m} 2^l (l−m)! l! / ((2l)! (l−p)! (l−m−p)! (m+p)! p!), p = 0..=l−m.
/// A multiplies these by (m!)², Ǎ does not.
#[derive(Clone, Debug)]
pub struct PSumCoefficients {
    pub l: usize,
    pub m: usize,
    pub coef: Vec<Dd>,
}

impl PSumCoefficients {
    pub fn new(l: usize, m: usize) -> Self {
        assert!(m <= l, "l must be >= m");
        let base = Dd::new(2f64.powi(l as i32)) * factorial_dd(l - m) * factorial_dd(l)
            / factorial_dd(2 * l);
        let coef = (0..=(l - m))
            .map(|p| {
                let c = base
                    / (factorial_dd(l - p) * factorial_dd(l - m - p) * factorial_dd(m + p) * factorial_dd(p));
                if (p + m) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        PSumCoefficients { l, m, coef }
    }

    /// A_{νμ,l}
    pub fn a(&self, nu: Dd, mu: Dd) -> Dd {
        let mf = factorial_dd(self.m);
        let s: Dd = self
            .coef
            .iter()
            .enumerate()
            .map(|(p, &c)| c * falling(nu, p) * falling(mu, self.l - self.m - p))
            .sum();
        s * mf * mf
    }

    /// Ǎ_{νμ,l}
    pub fn a_breve(&self, nu: Dd, mu: Dd) -> Result<Dd> {
        let (l, m) = (self.l, self.m);
        let mut s = Dd::ZERO;
        for (p, &c) in self.coef.iter().enumerate() {
            let fa = falling(nu, p);
            if fa.hi == 0.0 {
                continue;
            }
            let fb = falling(mu + m as f64, l - p);
            if fb.hi == 0.0 {
                continue;
            }
            s += c * fa * fb * psi_combination(mu, m, l - m - p)?;
        }
        Ok(s)
    }
}

/// Ψ(μ, s) = ψ(−μ+s) − ψ(1+m+s) − ψ(1+s)
pub fn psi_combination(mu: Dd, m: usize, s: usize) -> Result<Dd> {
    let arg = -mu + s as f64;
    let near = arg.hi.round();
    if near <= 0.0 && (arg.hi - near).abs() < 1e-12 {
        return Err(Error::Pole(format!(
            "ψ(−μ+s) with μ = {} and s = {s}",
            mu.hi
        )));
    }
    Ok(digamma_dd(arg)? - digamma_dd(Dd::new((1 + m + s) as f64))? - digamma_dd(Dd::new((1 + s) as f64))?)
}

/// A_{νμ,l} with μ = n − ν − m − 1.
pub fn a_matrix(ctx: &QuantumContext, nu: f64, l: usize) -> f64 {
    let mu = Dd::new(ctx.n) - nu - (ctx.m as f64 + 1.0);
    PSumCoefficients::new(l, ctx.m).a(Dd::new(nu), mu).to_f64()
}

/// Large-ν form (−1)^l ν^{l−m} 2^l (m!)² / (l! (l+m)!).
///
/// This is the leading term of the p-sum (Vandermonde's identity collapses
/// Σ_p C(l,p) C(l,m+p) to C(2l,l−m)). The often-quoted variant with (l!)²
/// in the denominator is smaller by a factor l!.
pub fn a_matrix_asymptotic(nu: f64, l: usize, m: usize) -> f64 {
    let mut v = Dd::new(2f64.powi(l as i32)) * factorial_dd(m) * factorial_dd(m)
        / (factorial_dd(l) * factorial_dd(l + m));
    v *= Dd::new(nu).powi((l - m) as i32);
    if l % 2 == 1 {
        v = -v;
    }
    v.to_f64()
}

/// Ǎ_{νμ,l} with μ = n − ν − m − 1.
pub fn a_breve_matrix(ctx: &QuantumContext, nu: f64, l: usize) -> Result<f64> {
    let mu = Dd::new(ctx.n) - nu - (ctx.m as f64 + 1.0);
    Ok(PSumCoefficients::new(l, ctx.m).a_breve(Dd::new(nu), mu)?.to_f64())
}

/// W_l / (m! N_lm), the common prefactor of B and Υ.
pub fn b_prefactor(ctx: &QuantumContext, l: usize) -> Result<SignedLogValue> {
    let w = wronskian_w(ctx, l)?;
    let d = factorial_dd(ctx.m) * norm_nlm_dd(l, ctx.m);
    Ok(w / SignedLogValue::from_f64(d.to_f64()))
}

/// B_{l,n₁} = W_l/(m! N_lm) · A_{n₁n₂,l} · N_{n₁}² · Γ(−n₂)
pub fn b_matrix(ctx: &QuantumContext, l: usize, n1: usize) -> Result<SignedLogValue> {
    let n2 = ctx.partner(n1 as f64);
    let g = log_gamma_signed(-n2)?;
    let a = Dd::new(a_matrix(ctx, n1 as f64, l));
    let nsq = norm_nn1_sq_dd(ctx, n1);
    Ok(b_prefactor(ctx, l)? * SignedLogValue::from_f64((a * nsq).to_f64()) * g)
}

/// B_{l,n₁}/Γ(−n₂) for n₁ = 0..count, in plain arithmetic.
pub fn b_matrix_reduced_table(ctx: &QuantumContext, l: usize, count: usize) -> Result<Vec<f64>> {
    let pre = b_prefactor(ctx, l)?.to_f64();
    if !pre.is_finite() {
        return Err(Error::Overflow(format!("W_l/(m! N_lm) at l = {l}")));
    }
    let coef = PSumCoefficients::new(l, ctx.m);
    let nsq = crate::coulomb::norm_nn1_sq_table(ctx, count);
    Ok((0..count)
        .map(|n1| {
            let nu = Dd::new(n1 as f64);
            let mu = Dd::new(ctx.n) - nu - (ctx.m as f64 + 1.0);
            (coef.a(nu, mu) * nsq[n1]).to_f64() * pre
        })
        .collect())
}

/// Ω(μ) = Γ(1+m+μ)/Γ(1+μ) · [(ψ(1+m+μ)+ψ(1+μ)−2 ln n)/2 + π cot πμ].
///
/// Evaluated as R(μ)(ψ(−μ) − ln n) + ½ Σ_j Π_{i≠j}(μ+i) with
/// R(μ) = (μ+1)…(μ+m), which is the same function written without the
/// removable singularities at negative integers. Poles remain at μ = 0, 1, 2, …
pub fn omega_dd(n: f64, m: usize, mu: Dd) -> Result<Dd> {
    let near = mu.hi.round();
    if near >= 0.0 && (mu.hi - near).abs() < 1e-12 {
        return Err(Error::Pole(format!("Ω at μ = {}", mu.hi)));
    }
    let mut ratio = Dd::ONE;
    for j in 1..=m {
        ratio *= mu + j as f64;
    }
    let mut half_sum = Dd::ZERO;
    for j in 1..=m {
        let mut p = Dd::ONE;
        for i in 1..=m {
            if i != j {
                p *= mu + i as f64;
            }
        }
        half_sum += p;
    }
    Ok(ratio * (digamma_dd(-mu)? - Dd::new(n).ln()) + half_sum * 0.5)
}

pub fn omega(ctx: &QuantumContext, mu: f64) -> Result<f64> {
    Ok(omega_dd(ctx.n, ctx.m, Dd::new(mu))?.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_at_l_equals_m() {
        let ctx0 = QuantumContext::from_delta(10.5, 0, 1.3).unwrap();
        let ctx1 = QuantumContext::from_delta(10.5, 1, 1.3).unwrap();
        for nu in [0.0, 2.37, 7.0] {
            assert!((a_matrix(&ctx0, nu, 0) - 1.0).abs() < 1e-15);
            assert!((a_matrix(&ctx1, nu, 1) + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn omega_half_integer_m0() {
        // cot vanishes at half-integers: Ω = ψ(1/2) − ln n
        let ctx = QuantumContext::from_delta(7.3, 0, 1.0).unwrap();
        let want = -0.5772156649015329 - 2.0 * 2f64.ln() - 7.3f64.ln();
        assert!((omega(&ctx, -0.5).unwrap() - want).abs() < 1e-14);
        assert!(omega(&ctx, 3.0).is_err());
        assert!(omega(&ctx, -2.0).is_ok());
    }
}
