//! The verification suite behind `verify`: exact expansions, Wronskians,
//! reflection formulas and the zero-field limit of the channels.

use crate::coulomb::{norm_nn1_sq_dd, wronskian_w, FieldGrid, QuantumContext};
use crate::error::Result;
use crate::lft::{exact_irregular_identity_residual, regular_lft_identity_residual};
use crate::specfun::{digamma, kummer_m, log_gamma_signed, tricomi_u};
use crate::stark::solve_channels;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub name: String,
    pub measured: f64,
    pub tol: f64,
}

impl OracleResult {
    pub fn passed(&self) -> bool {
        self.measured.is_finite() && self.measured <= self.tol
    }

    pub fn line(&self) -> String {
        format!(
            "oracle={} status={} measured={:.3e} tol={:.0e}",
            self.name,
            if self.passed() { "pass" } else { "fail" },
            self.measured,
            self.tol
        )
    }
}

pub const REGULAR_TOL: f64 = 1e-8;
pub const IRREGULAR_TOL: f64 = 1e-6;
pub const WRONSKIAN_TOL: f64 = 1e-8;
pub const REFLECTION_TOL: f64 = 1e-12;
pub const ZERO_FIELD_NU_TOL: f64 = 1e-6;
pub const ZERO_FIELD_C_TOL: f64 = 1e-4;
pub const ZERO_FIELD: f64 = 1e-12;

/// r ∈ [1, 20], |cosθ| ≤ 0.95
pub fn regular_grid() -> Result<FieldGrid> {
    FieldGrid::uniform((1.0, 20.0, 40), (-0.95, 0.95, 39))
}

/// r ∈ [5, 40], |cosθ| ≤ 0.9
pub fn irregular_grid() -> Result<FieldGrid> {
    FieldGrid::uniform((5.0, 40.0, 36), (-0.9, 0.9, 37))
}

/// sup of the regular-expansion residual for one (m, ν).
pub fn regular_identity(n: f64, m: usize, nu: f64) -> Result<OracleResult> {
    let ctx = QuantumContext::from_field(n, m, 0.0)?;
    let res = regular_lft_identity_residual(&ctx, nu, &regular_grid()?, None, REGULAR_TOL)?;
    Ok(OracleResult {
        name: format!("regular_expansion[n={n},m={m},nu={nu}]"),
        measured: res.sup(),
        tol: REGULAR_TOL,
    })
}

/// sup of the irregular-expansion residual for one (m, l).
pub fn irregular_identity(n: f64, m: usize, l: usize) -> Result<OracleResult> {
    let ctx = QuantumContext::from_field(n, m, 0.0)?;
    let res = exact_irregular_identity_residual(&ctx, l, &irregular_grid()?, None, IRREGULAR_TOL)?;
    Ok(OracleResult {
        name: format!("irregular_expansion[n={n},m={m},l={l}]"),
        measured: res.sup(),
        tol: IRREGULAR_TOL,
    })
}

/// Largest relative error of M′U − MU′ = Γ(b) x^{−b} eˣ / Γ(a), with
/// M′ = (a/b) M(a+1, b+1) and U′ = −a U(a+1, b+1).
pub fn kummer_wronskian() -> Result<OracleResult> {
    let mut worst = 0.0f64;
    for &a in &[-9.5, -6.3, -2.7, -0.5, 0.4, 1.7] {
        for b in 1..=6 {
            let b = b as f64;
            for &x in &[0.3, 2.0, 7.5, 19.0, 35.0] {
                let m0 = kummer_m(a, b, x)?;
                let m1 = kummer_m(a + 1.0, b + 1.0, x)? * a / b;
                let u0 = tricomi_u(a, b, x)?;
                let u1 = -a * tricomi_u(a + 1.0, b + 1.0, x)?;
                let lhs = m1 * u0 - m0 * u1;
                let lg = log_gamma_signed(b)?.log_abs - log_gamma_signed(a)?.log_abs;
                let sign = log_gamma_signed(a)?.sign as f64;
                let rhs = sign * (lg - b * x.ln() + x).exp();
                worst = worst.max((lhs - rhs).abs() / rhs.abs());
            }
        }
    }
    Ok(OracleResult {
        name: "kummer_wronskian".into(),
        measured: worst,
        tol: WRONSKIAN_TOL,
    })
}

/// Largest relative error of r²(F_l′G_l − F_lG_l′) against W_l.
pub fn radial_wronskian(n: f64) -> Result<OracleResult> {
    let ctx = QuantumContext::from_field(n, 0, 0.0)?;
    let mut worst = 0.0f64;
    for l in 0..6usize {
        let w = wronskian_w(&ctx, l)?.to_f64();
        let a = -n + l as f64 + 1.0;
        let b = 2.0 * l as f64 + 2.0;
        for &r in &[1.5, 6.0, 17.0, 33.0] {
            let z = 2.0 * r / n;
            let pref = (2.0 * l as f64 * (r / n).ln() - 2.0 * r / n).exp();
            let mp = kummer_m(a + 1.0, b + 1.0, z)? * a / b;
            let up = -a * tricomi_u(a + 1.0, b + 1.0, z)?;
            let got = r * r * pref * (2.0 / n)
                * (mp * tricomi_u(a, b, z)? - kummer_m(a, b, z)? * up);
            worst = worst.max((got - w).abs() / w.abs());
        }
    }
    Ok(OracleResult {
        name: format!("radial_wronskian[n={n}]"),
        measured: worst,
        tol: WRONSKIAN_TOL,
    })
}

/// Γ(x)Γ(1−x) = π / sin πx and ψ(1−x) − ψ(x) = π cot πx.
pub fn reflection() -> Result<OracleResult> {
    let pi = std::f64::consts::PI;
    let mut worst = 0.0f64;
    for i in 0..40 {
        let x = -7.3 + 0.37 * i as f64;
        if (x - x.round()).abs() < 1e-6 {
            continue;
        }
        let g = log_gamma_signed(x)? * log_gamma_signed(1.0 - x)?;
        let s = (pi * x).sin();
        let want = (pi / s.abs()).ln();
        worst = worst.max((g.log_abs - want).abs());
        if g.sign as f64 != s.signum() {
            worst = f64::INFINITY;
        }
        let d = digamma(1.0 - x)? - digamma(x)?;
        let cot = pi * (pi * x).cos() / s;
        worst = worst.max((d - cot).abs() / cot.abs().max(1.0));
    }
    Ok(OracleResult {
        name: "gamma_digamma_reflection".into(),
        measured: worst,
        tol: REFLECTION_TOL,
    })
}

/// At F = 1e−12: max |ν_k − (k−1)| and max |c_k² − N_{k−1}²| for k ≤ 10.
pub fn zero_field(n: f64, m: usize) -> Result<Vec<OracleResult>> {
    let ctx = QuantumContext::from_field(n, m, ZERO_FIELD)?;
    let t = solve_channels(&ctx, 10)?;
    let mut dn = 0.0f64;
    let mut dc = 0.0f64;
    for ch in &t.channels {
        dn = dn.max((ch.nu_f64() - (ch.k - 1) as f64).abs());
        let nsq = norm_nn1_sq_dd(&ctx, ch.k - 1).to_f64();
        dc = dc.max((ch.c_f64().powi(2) - nsq).abs());
    }
    Ok(vec![
        OracleResult {
            name: format!("zero_field_nu[n={n},m={m}]"),
            measured: dn,
            tol: ZERO_FIELD_NU_TOL,
        },
        OracleResult {
            name: format!("zero_field_c2[n={n},m={m}]"),
            measured: dc,
            tol: ZERO_FIELD_C_TOL,
        },
    ])
}

/// The full suite for quantum numbers (n, m).
pub fn run_suite(n: f64, m: usize) -> Result<Vec<OracleResult>> {
    let mut out = vec![reflection()?, kummer_wronskian()?, radial_wronskian(n)?];
    let mut ms = vec![0, m];
    ms.dedup();
    for &mm in &ms {
        for nu in [0.0, 2.0, 2.37] {
            out.push(regular_identity(n, mm, nu)?);
        }
    }
    for l in [1, 3, 5] {
        if l >= m {
            out.push(irregular_identity(n, m, l)?);
        }
    }
    out.extend(zero_field(n, m)?);
    Ok(out)
}
