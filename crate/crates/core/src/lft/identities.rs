//! Residuals of the two exact expansions on a grid.
//!
//! Residuals are normalized per radius: each node's |lhs − rhs| is divided by
//! max over cosθ of |lhs| at the same r. Pointwise relative errors are
//! meaningless on the nodal lines of the functions involved.

use rayon::prelude::*;

use super::matrices::{b_matrix_reduced_table, PSumCoefficients};
use crate::coulomb::{
    parabolic_regular_f, radial_irregular_g, radial_regular_f, FieldGrid, GridNode,
    QuantumContext,
};
use crate::error::{Error, Result};
use crate::specfun::{gamma_scaled_u_ascending, kummer_m_descending, legendre_p_row, Dd, DEFAULT_PHASE};

/// Cap on the l sum of the regular expansion.
pub const L_MAX_CAP: usize = 160;
/// Cap on the n₁ sum of the irregular expansion.
pub const N1_MAX_CAP: usize = 1 << 17;

#[derive(Clone, Debug)]
pub struct ResidualField {
    /// Normalized residual per grid node, in grid order.
    pub values: Vec<f64>,
    pub flagged: Vec<bool>,
    /// Truncation actually used (largest over nodes for adaptive sums).
    pub truncation: usize,
}

impl ResidualField {
    /// Sup over unflagged nodes.
    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.flagged)
            .filter(|(_, &f)| !f)
            .map(|(v, _)| v.abs())
            .fold(0.0, f64::max)
    }
}

fn normalize_rows(grid: &FieldGrid, lhs: &[f64], diff: &[f64]) -> Vec<f64> {
    let nc = grid.costheta_values.len();
    let mut out = vec![0.0; diff.len()];
    for (row, chunk) in lhs.chunks(nc).enumerate() {
        let scale = chunk.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for j in 0..nc {
            let i = row * nc + j;
            out[i] = if scale > 0.0 { diff[i].abs() / scale } else { diff[i].abs() };
        }
    }
    out
}

/// Terms A_{νμ,l} P_l^m F_l for l = m..=l_max at one node.
fn regular_terms(ctx: &QuantumContext, a: &[f64], node: &GridNode, l_max: usize) -> Result<Vec<f64>> {
    let p = legendre_p_row(l_max, ctx.m, node.cos_theta, DEFAULT_PHASE)?;
    (ctx.m..=l_max)
        .map(|l| Ok(a[l - ctx.m] * p[l - ctx.m] * radial_regular_f(ctx, l, node.r)?))
        .collect()
}

/// f_ν(ξ) f_μ(η) − Σ_{l=m}^{l_max} A_{νμ,l} P_l^m(cosθ) F_l(r).
///
/// With `l_max = None` the sum is extended until the last ⌈20%⌉ of terms
/// contribute less than 1e−3 · `target` (normalized), capped at [`L_MAX_CAP`].
pub fn regular_lft_identity_residual(
    ctx: &QuantumContext,
    nu: f64,
    grid: &FieldGrid,
    l_max: Option<usize>,
    target: f64,
) -> Result<ResidualField> {
    let m = ctx.m;
    let mu = ctx.partner(nu);
    let nodes: Vec<GridNode> = grid.nodes().collect();
    let lhs: Vec<f64> = nodes
        .par_iter()
        .map(|nd| Ok(parabolic_regular_f(ctx, nu, nd.xi)? * parabolic_regular_f(ctx, mu, nd.eta)?))
        .collect::<Result<_>>()?;
    let a_of = |lm: usize| -> Vec<f64> {
        (m..=lm)
            .map(|l| {
                PSumCoefficients::new(l, m)
                    .a(Dd::new(nu), Dd::new(ctx.n) - nu - (m as f64 + 1.0))
                    .to_f64()
            })
            .collect()
    };
    let mut lm = l_max.unwrap_or(m + 20);
    loop {
        let a = a_of(lm);
        let terms: Vec<Vec<f64>> = nodes
            .par_iter()
            .map(|nd| regular_terms(ctx, &a, nd, lm))
            .collect::<Result<_>>()?;
        let diff: Vec<f64> = lhs
            .iter()
            .zip(&terms)
            .map(|(l, t)| l - crate::specfun::sum::dd_sum(t.iter().cloned()))
            .collect();
        let values = normalize_rows(grid, &lhs, &diff);
        if l_max.is_some() {
            return Ok(ResidualField {
                values,
                flagged: nodes.iter().map(|n| n.flagged).collect(),
                truncation: lm,
            });
        }
        let window = ((lm - m + 1) as f64 * 0.2).ceil() as usize;
        let tail: Vec<f64> = terms
            .iter()
            .map(|t| crate::specfun::sum::dd_sum(t[t.len() - window..].iter().cloned()))
            .collect();
        let tail_norm = normalize_rows(grid, &lhs, &tail)
            .iter()
            .zip(&nodes)
            .filter(|(_, n)| !n.flagged)
            .fold(0.0f64, |a, (v, _)| a.max(*v));
        if tail_norm < 1e-3 * target {
            return Ok(ResidualField {
                values,
                flagged: nodes.iter().map(|n| n.flagged).collect(),
                truncation: lm,
            });
        }
        if lm >= L_MAX_CAP {
            return Err(Error::NonConvergence(format!(
                "regular expansion tail {tail_norm:.3e} at l_max = {lm}"
            )));
        }
        lm = (lm + (lm - m) / 2 + 5).min(L_MAX_CAP);
    }
}

/// Σ_{n₁<count} B_{l,n₁} f_{n₁}(ξ) g_{n₂}(η) at one node and the sum of its
/// last `window` terms.
fn irregular_partial(
    ctx: &QuantumContext,
    b_red: &[f64],
    node: &GridNode,
    count: usize,
    window: usize,
) -> Result<(f64, f64)> {
    let m = ctx.m as f64;
    let n = ctx.n;
    let x = node.xi / n;
    let y = node.eta / n;
    let fm = kummer_m_descending(0.0, m + 1.0, x, count)?;
    let v = gamma_scaled_u_ascending(-ctx.partner(0.0), m + 1.0, y, count)?;
    let pref = (0.5 * m * x.ln() - 0.5 * x).exp() * (0.5 * m * y.ln() - 0.5 * y).exp();
    let pref = if ctx.m == 0 { (-0.5 * (x + y)).exp() } else { pref };
    let mut s = Dd::ZERO;
    let mut t = Dd::ZERO;
    for j in 0..count {
        let term = b_red[j] * fm[j] * v[j] * pref;
        s += term;
        if j + window >= count {
            t += term;
        }
    }
    Ok((s.to_f64(), t.to_f64()))
}

/// P_l^m(cosθ) G_l(r) − Σ_{n₁} B_{l,n₁} f_{n₁}(ξ) g_{n₂}(η).
///
/// With `n1_max = None` each node doubles its n₁ range until the last ⌈20%⌉
/// of terms contribute less than 1e−3 · `target` (normalized by the row
/// scale). Flagged nodes are evaluated with the largest count reached by
/// the others and are reported but not used in [`ResidualField::sup`].
pub fn exact_irregular_identity_residual(
    ctx: &QuantumContext,
    l: usize,
    grid: &FieldGrid,
    n1_max: Option<usize>,
    target: f64,
) -> Result<ResidualField> {
    let m = ctx.m;
    if (ctx.n - ctx.n.round()).abs() < 1e-9 {
        return Err(Error::Pole("integer n makes Γ(−n₂) singular".into()));
    }
    let nodes: Vec<GridNode> = grid.nodes().collect();
    let lhs: Vec<f64> = nodes
        .par_iter()
        .map(|nd| {
            let p = *legendre_p_row(l, m, nd.cos_theta, DEFAULT_PHASE)?.last().unwrap();
            Ok(p * radial_irregular_g(ctx, l, nd.r)?)
        })
        .collect::<Result<_>>()?;
    let nc = grid.costheta_values.len();
    let row_scale: Vec<f64> = lhs
        .chunks(nc)
        .map(|c| c.iter().fold(0.0f64, |a, v| a.max(v.abs())))
        .collect();
    let cap = n1_max.map(|v| v + 1).unwrap_or(N1_MAX_CAP);
    let b_red = b_matrix_reduced_table(ctx, l, cap)?;
    let results: Vec<(f64, usize)> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, nd)| {
            if nd.flagged && n1_max.is_none() {
                return Ok((f64::NAN, 0));
            }
            let scale = row_scale[i / nc];
            let mut count = n1_max.map(|v| v + 1).unwrap_or(64);
            loop {
                let window = (count as f64 * 0.2).ceil() as usize;
                let (s, t) = irregular_partial(ctx, &b_red, nd, count, window)?;
                if n1_max.is_some() || t.abs() < 1e-3 * target * scale {
                    return Ok((s, count));
                }
                if count >= cap {
                    return Err(Error::NonConvergence(format!(
                        "irregular expansion at r={}, cosθ={}: tail {:.3e}",
                        nd.r,
                        nd.cos_theta,
                        t.abs() / scale
                    )));
                }
                count = (count * 2).min(cap);
            }
        })
        .collect::<Result<_>>()?;
    let truncation = results.iter().map(|r| r.1).max().unwrap_or(0);
    let mut sums: Vec<f64> = results.iter().map(|r| r.0).collect();
    for (i, nd) in nodes.iter().enumerate() {
        if sums[i].is_nan() {
            let count = truncation.max(64);
            sums[i] = irregular_partial(ctx, &b_red, nd, count, 1)?.0;
        }
    }
    let diff: Vec<f64> = lhs.iter().zip(&sums).map(|(a, b)| a - b).collect();
    Ok(ResidualField {
        values: normalize_rows(grid, &lhs, &diff),
        flagged: nodes.iter().map(|n| n.flagged).collect(),
        truncation: truncation.saturating_sub(1),
    })
}
