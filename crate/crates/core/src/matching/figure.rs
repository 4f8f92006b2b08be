//! End-to-end reproduction of the two figure comparisons: channels, both γ
//! matrices, the plateau scan, matched fields and difference statistics.

use super::cutoff::CutoffSpec;
use super::field::{
    assemble, channel_part, compare_with_exact, default_field_weight, field_required_nu,
    regular_correction, DifferenceStats, MatchedField, FIELD_WEIGHT_TOL, REGION_LIMIT,
};
use super::gamma::{frobenius_deviation, gamma_matrices, required_nu, GammaMatrix};
use super::plateau::{plateau_scan, solve_channels_to, PlateauScan, SCAN_SPAN};
use crate::coulomb::{FieldGrid, QuantumContext};
use crate::error::Result;
use crate::stark::ChannelTable;

/// Relative change of the difference sup tolerated when l′_top is doubled.
pub const LTOP_TOL: f64 = 0.05;
/// Default l′_top − m.
pub const LTOP_SPAN: usize = 12;
/// Largest l′_top − m tried by the convergence check.
pub const LTOP_SPAN_CAP: usize = 48;

#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub ctx: QuantumContext,
    pub l: usize,
    /// Normalization radius: differences are divided by |P_l^m(0) G_l(r_ref)|.
    pub r_ref: f64,
    pub grid: FieldGrid,
    pub cutoff: CutoffSpec,
    /// Weight of the channel sum in the field; default scale 8n.
    pub field_weight: CutoffSpec,
    /// Channel and Coulomb terms with weight below this are dropped.
    pub field_tol: f64,
    /// Fixed l′_top, or the convergence schedule m+12, m+24, m+48 when `None`.
    pub l_top: Option<usize>,
}

impl FigureSpec {
    /// n = 10.5, m = 1, l = 3, δ = 1.3; r ∈ [10, 26.5] (inside 0.5 F^{−1/3}).
    pub fn figure1() -> Result<Self> {
        Self::preset(10.5, 30.0, 26.5)
    }

    /// n = 28.5, m = 1, l = 3, δ = 1.3; r ∈ [10, 80].
    pub fn figure2() -> Result<Self> {
        Self::preset(28.5, 40.0, 80.0)
    }

    pub fn preset(n: f64, r_ref: f64, r_hi: f64) -> Result<Self> {
        let ctx = QuantumContext::from_delta(n, 1, 1.3)?;
        let cutoff = CutoffSpec::default_for(n);
        Ok(FigureSpec {
            ctx,
            l: 3,
            r_ref,
            grid: FieldGrid::uniform((10.0, r_hi, 101), (-0.95, 0.95, 81))?,
            field_weight: default_field_weight(&ctx, &cutoff),
            field_tol: FIELD_WEIGHT_TOL,
            cutoff,
            l_top: None,
        })
    }

    pub fn region_limit(&self) -> f64 {
        REGION_LIMIT * self.ctx.field_radius()
    }
}

#[derive(Clone, Debug)]
pub struct MethodResult {
    pub gamma: GammaMatrix,
    pub field: MatchedField,
    pub normalized: Vec<f64>,
    pub stats: DifferenceStats,
}

#[derive(Clone, Debug)]
pub struct FigureResult {
    pub table: ChannelTable,
    pub l_top: usize,
    /// (l′_top, sup) pairs visited by the convergence check, UOM.
    pub l_top_history: Vec<(usize, f64)>,
    pub l_top_converged: bool,
    pub uom: MethodResult,
    pub glft: MethodResult,
    /// Frobenius-normalized γ deviation over l, l′ ≤ m + 6.
    pub equivalence: f64,
    /// sup of |G_uom − G_glft| normalized like the differences.
    pub mutual_sup: f64,
    pub plateau: PlateauScan,
}

fn sup_change(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn reproduce_figure(spec: &FigureSpec) -> Result<FigureResult> {
    let ctx = &spec.ctx;
    let m = ctx.m;
    let spans: Vec<usize> = match spec.l_top {
        Some(t) => vec![t.max(m) - m],
        None => {
            let mut v = vec![LTOP_SPAN];
            while *v.last().unwrap() < LTOP_SPAN_CAP {
                v.push(v.last().unwrap() * 2);
            }
            v
        }
    };
    let gamma_top = m + *spans.last().unwrap();
    let need = required_nu(ctx, &spec.cutoff, gamma_top).max(field_required_nu(&spec.field_weight, spec.field_tol));
    let table = solve_channels_to(ctx, need)?;
    let (gu, gg) = gamma_matrices(ctx, &table, gamma_top, &spec.cutoff)?;
    let part = channel_part(ctx, &table, spec.l, &spec.grid, &spec.field_weight, spec.field_tol)?;

    let sup_for = |g: &GammaMatrix, top: usize| -> Result<(MatchedField, Vec<f64>, DifferenceStats)> {
        let corr = regular_correction(ctx, g, spec.l, top, &spec.grid)?;
        let field = assemble(&part, &corr);
        let (norm, stats) = compare_with_exact(ctx, &field, spec.l, &spec.grid, spec.r_ref)?;
        Ok((field, norm, stats))
    };

    let mut history = Vec::new();
    let mut chosen = None;
    for &s in &spans {
        let sup = sup_for(&gu, m + s)?.2.sup;
        if let Some(&(prev_top, prev_sup)) = history.last() {
            if chosen.is_none() && sup_change(prev_sup, sup) < LTOP_TOL {
                chosen = Some(prev_top);
            }
        }
        history.push((m + s, sup));
    }
    let converged = chosen.is_some() || spans.len() == 1;
    let l_top = chosen.unwrap_or(m + *spans.last().unwrap());

    let truncate = |g: &GammaMatrix| -> GammaMatrix {
        let d = l_top - m + 1;
        GammaMatrix {
            l_top,
            entries: g.entries[..d].iter().map(|r| r[..d].to_vec()).collect(),
            ..g.clone()
        }
    };
    let (gu, gg) = (truncate(&gu), truncate(&gg));
    let (fu, nu, su) = sup_for(&gu, l_top)?;
    let (fg, ng, sg) = sup_for(&gg, l_top)?;
    let l_hi = m + SCAN_SPAN;
    let equivalence = frobenius_deviation(&gu.block(l_hi), &gg.block(l_hi));
    let mutual_sup = nu
        .iter()
        .zip(&ng)
        .zip(spec.grid.nodes())
        .filter(|(_, nd)| !nd.flagged)
        .map(|((a, b), _)| (a - b).abs())
        .fold(0.0, f64::max);
    let pair = (gu, gg);
    let plateau = plateau_scan(ctx, &spec.cutoff, &pair)?;
    let (gu, gg) = pair;
    Ok(FigureResult {
        table,
        l_top,
        l_top_history: history,
        l_top_converged: converged,
        uom: MethodResult { gamma: gu, field: fu, normalized: nu, stats: su },
        glft: MethodResult { gamma: gg, field: fg, normalized: ng, stats: sg },
        equivalence,
        mutual_sup,
        plateau,
    })
}
