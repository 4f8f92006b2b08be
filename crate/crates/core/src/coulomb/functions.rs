//! Spherical (r) and parabolic (ξ, η) Coulomb functions at energy −1/(2n²).

use super::context::QuantumContext;
use crate::error::{Error, Result};
use crate::specfun::{
    gamma_scaled_u, kummer_m, log_gamma_signed, tricomi_u, Dd, SignedLogValue,
};

fn check_r(ctx: &QuantumContext, l: usize, r: f64) -> Result<()> {
    if l < ctx.m {
        return Err(Error::Domain(format!("l = {l} below m = {}", ctx.m)));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r = {r} must be positive")));
    }
    if r > ctx.r_max() {
        return Err(Error::Range(format!("r = {r} beyond 4n² = {}", ctx.r_max())));
    }
    Ok(())
}

fn check_zeta(ctx: &QuantumContext, z: f64) -> Result<()> {
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("parabolic coordinate {z} < 0")));
    }
    if z > 2.0 * ctx.r_max() {
        return Err(Error::Range(format!("parabolic coordinate {z} beyond 8n²")));
    }
    Ok(())
}

/// (r/n)^l e^{−r/n}
fn radial_prefactor(n: f64, l: usize, r: f64) -> f64 {
    (l as f64 * (r / n).ln() - r / n).exp()
}

/// F_l(r) = (r/n)^l e^{−r/n} M(−n+l+1, 2l+2, 2r/n), regular at the origin.
pub fn radial_regular_f(ctx: &QuantumContext, l: usize, r: f64) -> Result<f64> {
    check_r(ctx, l, r)?;
    let n = ctx.n;
    let lf = l as f64;
    Ok(radial_prefactor(n, l, r) * kummer_m(-n + lf + 1.0, 2.0 * lf + 2.0, 2.0 * r / n)?)
}

/// G_l(r) = (r/n)^l e^{−r/n} U(−n+l+1, 2l+2, 2r/n), bounded at infinity.
pub fn radial_irregular_g(ctx: &QuantumContext, l: usize, r: f64) -> Result<f64> {
    check_r(ctx, l, r)?;
    let n = ctx.n;
    let lf = l as f64;
    Ok(radial_prefactor(n, l, r) * tricomi_u(-n + lf + 1.0, 2.0 * lf + 2.0, 2.0 * r / n)?)
}

/// (ζ/n)^{m/2} e^{−ζ/2n}
fn parabolic_prefactor(ctx: &QuantumContext, zeta: f64) -> f64 {
    let x = zeta / ctx.n;
    if ctx.m == 0 {
        (-0.5 * x).exp()
    } else if x == 0.0 {
        0.0
    } else {
        (0.5 * ctx.m as f64 * x.ln() - 0.5 * x).exp()
    }
}

/// f_κ(ζ) = (ζ/n)^{m/2} e^{−ζ/2n} M(−κ, m+1, ζ/n).
pub fn parabolic_regular_f(ctx: &QuantumContext, kappa: f64, zeta: f64) -> Result<f64> {
    check_zeta(ctx, zeta)?;
    let p = parabolic_prefactor(ctx, zeta);
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok(p * kummer_m(-kappa, ctx.m as f64 + 1.0, zeta / ctx.n)?)
}

/// g_μ(η) = (η/n)^{m/2} e^{−η/2n} U(−μ, m+1, η/n).
///
/// For m ≥ 1 this grows like η^{−m/2} as η → 0.
pub fn parabolic_irregular_g(ctx: &QuantumContext, mu: f64, eta: f64) -> Result<f64> {
    check_zeta(ctx, eta)?;
    if !(eta > 0.0) {
        return Err(Error::Domain("irregular parabolic function needs η > 0".into()));
    }
    Ok(parabolic_prefactor(ctx, eta) * tricomi_u(-mu, ctx.m as f64 + 1.0, eta / ctx.n)?)
}

/// Γ(−μ) g_μ(η): the combination entering every expansion over channels,
/// finite where Γ(−μ) and g_μ separately over- or underflow.
pub fn parabolic_irregular_g_scaled(ctx: &QuantumContext, mu: f64, eta: f64) -> Result<f64> {
    check_zeta(ctx, eta)?;
    if !(eta > 0.0) {
        return Err(Error::Domain("irregular parabolic function needs η > 0".into()));
    }
    Ok(parabolic_prefactor(ctx, eta) * gamma_scaled_u(-mu, ctx.m as f64 + 1.0, eta / ctx.n)?)
}

/// W_l = n (2l+1)! / (2^{2l+1} Γ(1+l−n)).
///
/// With F_l, G_l as defined here, r²(F_l′ G_l − F_l G_l′) = W_l.
pub fn wronskian_w(ctx: &QuantumContext, l: usize) -> Result<SignedLogValue> {
    let lf = l as f64;
    let g = log_gamma_signed(1.0 + lf - ctx.n)?;
    let fact = log_gamma_signed(2.0 * lf + 2.0)?;
    let head = SignedLogValue::new(ctx.n.ln() + fact.log_abs - (2.0 * lf + 1.0) * 2f64.ln(), 1);
    Ok(head / g)
}

/// N_lm = (2l+1)/2 · (l−m)!/(l+m)!
pub fn norm_nlm(l: usize, m: usize) -> f64 {
    norm_nlm_dd(l, m).to_f64()
}

pub fn norm_nlm_dd(l: usize, m: usize) -> Dd {
    assert!(m <= l, "norm_nlm needs m <= l");
    let mut r = Dd::new((2 * l + 1) as f64) / 2.0;
    for j in (l - m + 1)..=(l + m) {
        r /= j as f64;
    }
    r
}

/// N_{n₁} = (1/m!) √((m+n₁)!/(n₁! n))
pub fn norm_nn1(ctx: &QuantumContext, n1: usize) -> f64 {
    norm_nn1_sq_dd(ctx, n1).sqrt().to_f64()
}

/// N_{n₁}² in double-double.
pub fn norm_nn1_sq_dd(ctx: &QuantumContext, n1: usize) -> Dd {
    let m = ctx.m;
    let mut v = Dd::ONE / ctx.n;
    for j in 1..=m {
        v /= j as f64;
    }
    for j in 1..=n1 {
        v = v * (m + j) as f64 / j as f64;
    }
    v
}

/// N_{n₁}² for n₁ = 0..count.
pub fn norm_nn1_sq_table(ctx: &QuantumContext, count: usize) -> Vec<Dd> {
    let m = ctx.m;
    let mut out = Vec::with_capacity(count);
    let mut v = norm_nn1_sq_dd(ctx, 0);
    for j in 0..count {
        if j > 0 {
            v = v * (m + j) as f64 / j as f64;
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        assert_eq!(norm_nlm(0, 0), 0.5);
        assert!((norm_nlm(3, 1) - 7.0 / 24.0).abs() < 1e-16);
        let ctx = QuantumContext::from_delta(10.5, 1, 1.3).unwrap();
        assert!((norm_nn1(&ctx, 0) - (1.0f64 / 10.5).sqrt()).abs() < 1e-16);
    }
}
