//! Matched irregular solution on an (r, cosθ) grid and its comparison with
//! the exact P_l^m G_l.
//!
//! The channel sum Σ_k Υ_{l,k} c_k f_{ν_k} g_{μ_k} is taken with a smooth
//! weight w(ν) of scale z_f, and the Coulomb terms it displaces are added
//! back from the exact expansion: Σ_{n₁} (1 − w(n₁)) B_{l,n₁} f_{n₁} g_{n₂}.
//! The difference to the exact function is then
//! Σ_k w S_k − Σ_{n₁} w C_{n₁} − Σ_{l′} γ_{l,l′} P_{l′}^m F_{l′},
//! which is what is evaluated.

use rayon::prelude::*;

use super::cutoff::CutoffSpec;
use super::gamma::GammaMatrix;
use crate::coulomb::{
    parabolic_irregular_g_scaled, parabolic_regular_f, radial_irregular_g, radial_regular_f,
    FieldGrid, GridNode, QuantumContext,
};
use crate::error::{Error, Result};
use crate::lft::{b_matrix_reduced_table, b_prefactor, PSumCoefficients};
use crate::specfun::{
    gamma_scaled_u_ascending, kummer_m_descending, legendre_p, legendre_p_row, log_gamma_signed, Dd,
    SignedLogValue, DEFAULT_PHASE,
};
use crate::stark::ChannelTable;
use crate::table::Table;

/// Default z_f in units of n.
pub const FIELD_SCALE_OVER_N: f64 = 8.0;
/// Default weight below which channel and Coulomb terms are dropped.
pub const FIELD_WEIGHT_TOL: f64 = 1e-20;
/// Largest r/F^{−1/3} accepted by the near-Coulomb channel form.
pub const REGION_LIMIT: f64 = 0.5;

/// Weight of the channel sum: same shape as `gamma_cutoff`, scale z_f = 8n.
pub fn default_field_weight(ctx: &QuantumContext, gamma_cutoff: &CutoffSpec) -> CutoffSpec {
    gamma_cutoff.with_scale(FIELD_SCALE_OVER_N * ctx.n)
}

/// Largest ν the channel sum needs under `weight`, dropping terms whose
/// weight is below `tol`.
pub fn field_required_nu(weight: &CutoffSpec, tol: f64) -> f64 {
    weight.reach(0, tol)
}

pub fn check_region(ctx: &QuantumContext, grid: &FieldGrid) -> Result<()> {
    let limit = REGION_LIMIT * ctx.field_radius();
    if grid.r_max() > limit {
        return Err(Error::Region(format!(
            "grid reaches r = {}, beyond {REGION_LIMIT}·F^(-1/3) = {limit:.4}",
            grid.r_max()
        )));
    }
    Ok(())
}

/// γ-independent part of the matched field.
#[derive(Clone, Debug)]
pub struct ChannelPart {
    pub l: usize,
    /// P_l^m(cosθ) G_l(r)
    pub exact: Vec<f64>,
    /// Σ_k w S_k − Σ_{n₁} w C_{n₁}
    pub channel: Vec<f64>,
    pub channels_used: usize,
    pub n1_used: usize,
    pub weight: CutoffSpec,
}

pub fn channel_part(
    ctx: &QuantumContext,
    table: &ChannelTable,
    l: usize,
    grid: &FieldGrid,
    weight: &CutoffSpec,
    tol: f64,
) -> Result<ChannelPart> {
    check_region(ctx, grid)?;
    let m = ctx.m;
    let reach = field_required_nu(weight, tol);
    let last = table.channels.last().map(|c| c.nu_f64()).unwrap_or(0.0);
    if last < reach {
        return Err(Error::Range(format!(
            "channels reach ν = {last:.3}, the field weight needs {reach:.3}"
        )));
    }
    let pre = b_prefactor(ctx, l)?.to_f64();
    let coef = PSumCoefficients::new(l, m);
    // (ν, μ, w · W/(m! N_lm) · A · c²)
    let stark: Vec<(f64, f64, f64)> = table
        .channels
        .iter()
        .filter(|c| c.nu.hi <= reach)
        .map(|c| {
            let a = coef.a(c.nu, c.mu) * c.c.sqr() * weight.weight_dd(c.nu);
            (c.nu_f64(), c.mu_f64(), a.to_f64() * pre)
        })
        .collect();
    let n1_count = reach.floor() as usize + 1;
    let b_red = b_matrix_reduced_table(ctx, l, n1_count)?;
    let coulomb: Vec<f64> = (0..n1_count)
        .map(|j| b_red[j] * weight.weight(j as f64))
        .collect();
    let nodes: Vec<GridNode> = grid.nodes().collect();
    let out: Vec<(f64, f64)> = nodes
        .par_iter()
        .map(|nd| {
            let exact = legendre_p(l, m, nd.cos_theta)? * radial_irregular_g(ctx, l, nd.r)?;
            let mut s = Dd::ZERO;
            for &(nu, mu, a) in &stark {
                let f = parabolic_regular_f(ctx, nu, nd.xi)?;
                let g = parabolic_irregular_g_scaled(ctx, mu, nd.eta)?;
                s += a * f * g;
            }
            s -= coulomb_sum(ctx, &coulomb, nd)?;
            Ok((exact, s.to_f64()))
        })
        .collect::<Result<_>>()?;
    Ok(ChannelPart {
        l,
        exact: out.iter().map(|p| p.0).collect(),
        channel: out.iter().map(|p| p.1).collect(),
        channels_used: stark.len(),
        n1_used: n1_count,
        weight: *weight,
    })
}

/// Υ_{l,k} = W_l/(m! N_lm) · A_{ν_k μ_k, l} · c_k · Γ(−μ_k)
pub fn upsilon(ctx: &QuantumContext, table: &ChannelTable, l: usize, k: usize) -> Result<SignedLogValue> {
    let ch = table
        .channels
        .get(k.wrapping_sub(1))
        .ok_or_else(|| Error::Domain(format!("channel {k} not in the table")))?;
    let a = PSumCoefficients::new(l, ctx.m).a(ch.nu, ch.mu) * ch.c;
    Ok(b_prefactor(ctx, l)? * SignedLogValue::from_f64(a.to_f64()) * log_gamma_signed(-ch.mu_f64())?)
}

/// Σ_{n₁} coef[n₁] f_{n₁}(ξ) Γ(−n₂) g_{n₂}(η)
fn coulomb_sum(ctx: &QuantumContext, coef: &[f64], nd: &GridNode) -> Result<Dd> {
    let m = ctx.m as f64;
    let n = ctx.n;
    let count = coef.len();
    let x = nd.xi / n;
    let y = nd.eta / n;
    let fm = kummer_m_descending(0.0, m + 1.0, x, count)?;
    let v = gamma_scaled_u_ascending(-ctx.partner(0.0), m + 1.0, y, count)?;
    let pref = if ctx.m == 0 {
        (-0.5 * (x + y)).exp()
    } else {
        (0.5 * m * (x * y).ln() - 0.5 * (x + y)).exp()
    };
    let mut s = Dd::ZERO;
    for j in 0..count {
        s += coef[j] * fm[j] * v[j] * pref;
    }
    Ok(s)
}

/// Σ_{l′=m}^{l_top} γ_{l,l′} P_{l′}^m(cosθ) F_{l′}(r).
pub fn regular_correction(
    ctx: &QuantumContext,
    gamma: &GammaMatrix,
    l: usize,
    l_top: usize,
    grid: &FieldGrid,
) -> Result<Vec<f64>> {
    let m = ctx.m;
    if l_top > gamma.l_top {
        return Err(Error::Domain(format!(
            "l′_top = {l_top} beyond the γ matrix ({})",
            gamma.l_top
        )));
    }
    let row = &gamma.entries[l - m];
    let top = l_top;
    let nodes: Vec<GridNode> = grid.nodes().collect();
    nodes
        .par_iter()
        .map(|nd| {
            let p = legendre_p_row(top, m, nd.cos_theta, DEFAULT_PHASE)?;
            let mut s = Dd::ZERO;
            for lp in m..=top {
                s += row[lp - m] * p[lp - m] * radial_regular_f(ctx, lp, nd.r)?;
            }
            Ok(s.to_f64())
        })
        .collect()
}

/// Matched field, exact field and their difference at every grid node.
#[derive(Clone, Debug)]
pub struct MatchedField {
    pub matched: Vec<f64>,
    pub exact: Vec<f64>,
    /// matched − exact
    pub difference: Vec<f64>,
}

pub fn assemble(part: &ChannelPart, correction: &[f64]) -> MatchedField {
    let difference: Vec<f64> = part
        .channel
        .iter()
        .zip(correction)
        .map(|(c, r)| c - r)
        .collect();
    MatchedField {
        matched: part.exact.iter().zip(&difference).map(|(e, d)| e + d).collect(),
        exact: part.exact.clone(),
        difference,
    }
}

/// G_matched = Σ_k Υ_{l,k} c_k f_{ν_k} g_{μ_k} − Σ_{l′} γ_{l,l′} P_{l′}^m F_{l′},
/// with the channel sum completed by the Coulomb tail as described above.
pub fn matched_irregular_field(
    ctx: &QuantumContext,
    table: &ChannelTable,
    gamma: &GammaMatrix,
    l: usize,
    grid: &FieldGrid,
    weight: &CutoffSpec,
) -> Result<MatchedField> {
    let part = channel_part(ctx, table, l, grid, weight, FIELD_WEIGHT_TOL)?;
    let corr = regular_correction(ctx, gamma, l, gamma.l_top, grid)?;
    Ok(assemble(&part, &corr))
}

/// |P_l^m(0) G_l(r_ref)|
pub fn reference_scale(ctx: &QuantumContext, l: usize, r_ref: f64) -> Result<f64> {
    Ok((legendre_p(l, ctx.m, 0.0)? * radial_irregular_g(ctx, l, r_ref)?).abs())
}

/// Statistics of the normalized difference over unflagged nodes.
#[derive(Clone, Debug)]
pub struct DifferenceStats {
    pub sup: f64,
    pub sup_r: f64,
    pub sup_costheta: f64,
    pub median: f64,
    pub q90: f64,
    pub q99: f64,
    pub rms: f64,
    pub nodes: usize,
    pub flagged: usize,
    /// (cosθ of the column used, sup over r) for each requested slice.
    pub slices: Vec<(f64, f64)>,
}

/// Slices reported alongside the 2-D statistics.
pub const SLICE_COSTHETA: [f64; 3] = [-0.5, 0.0, 0.5];

/// Nearest grid column to cosθ = `c`.
pub fn nearest_column(grid: &FieldGrid, c: f64) -> usize {
    let mut best = 0;
    for (j, v) in grid.costheta_values.iter().enumerate() {
        if (v - c).abs() < (grid.costheta_values[best] - c).abs() {
            best = j;
        }
    }
    best
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
    } else {
        sorted[i]
    }
}

/// Normalized difference (matched − exact)/|P_l^m(0) G_l(r_ref)| and its statistics.
pub fn compare_with_exact(
    ctx: &QuantumContext,
    field: &MatchedField,
    l: usize,
    grid: &FieldGrid,
    r_ref: f64,
) -> Result<(Vec<f64>, DifferenceStats)> {
    let scale = reference_scale(ctx, l, r_ref)?;
    let norm: Vec<f64> = field.difference.iter().map(|d| d / scale).collect();
    let nc = grid.costheta_values.len();
    let mut kept = Vec::new();
    let mut sup = (0.0f64, 0.0, 0.0);
    let mut flagged = 0;
    for (i, nd) in grid.nodes().enumerate() {
        if nd.flagged {
            flagged += 1;
            continue;
        }
        let a = norm[i].abs();
        if a > sup.0 {
            sup = (a, nd.r, nd.cos_theta);
        }
        kept.push(a);
    }
    let rms = (kept.iter().map(|a| a * a).sum::<f64>() / kept.len().max(1) as f64).sqrt();
    kept.sort_by(f64::total_cmp);
    let slices = SLICE_COSTHETA
        .iter()
        .map(|&c| {
            let j = nearest_column(grid, c);
            let s = (0..grid.r_values.len())
                .filter(|&i| !grid.node(i * nc + j).flagged)
                .map(|i| norm[i * nc + j].abs())
                .fold(0.0, f64::max);
            (grid.costheta_values[j], s)
        })
        .collect();
    let stats = DifferenceStats {
        sup: sup.0,
        sup_r: sup.1,
        sup_costheta: sup.2,
        median: quantile(&kept, 0.5),
        q90: quantile(&kept, 0.9),
        q99: quantile(&kept, 0.99),
        rms,
        nodes: kept.len(),
        flagged,
        slices,
    };
    Ok((norm, stats))
}

impl DifferenceStats {
    pub fn summary_lines(&self, prefix: &str) -> Vec<(String, String)> {
        let mut v = vec![
            (format!("{prefix}.sup"), format!("{:.6e}", self.sup)),
            (format!("{prefix}.sup_at"), format!("r={};costheta={}", self.sup_r, self.sup_costheta)),
            (format!("{prefix}.median"), format!("{:.6e}", self.median)),
            (format!("{prefix}.q90"), format!("{:.6e}", self.q90)),
            (format!("{prefix}.q99"), format!("{:.6e}", self.q99)),
            (format!("{prefix}.rms"), format!("{:.6e}", self.rms)),
            (format!("{prefix}.nodes"), self.nodes.to_string()),
            (format!("{prefix}.flagged"), self.flagged.to_string()),
        ];
        for (c, s) in &self.slices {
            v.push((format!("{prefix}.slice_sup[costheta={c}]"), format!("{s:.6e}")));
        }
        v
    }
}

/// Grid table with one column per named field.
pub fn field_table(grid: &FieldGrid, columns: &[(&str, &[f64])]) -> Table {
    let mut names = vec!["r", "costheta", "xi", "eta", "flagged"];
    names.extend(columns.iter().map(|c| c.0));
    let mut t = Table::new(names);
    for (i, nd) in grid.nodes().enumerate() {
        let mut row = vec![nd.r, nd.cos_theta, nd.xi, nd.eta, if nd.flagged { 1.0 } else { 0.0 }];
        row.extend(columns.iter().map(|c| c.1[i]));
        t.push(row);
    }
    t
}
