use super::cutoff::{CutoffShape, CutoffSpec};
use super::gamma::{gamma_matrices, max_entry_deviation, required_nu, GammaMatrix};
use crate::coulomb::QuantumContext;
use crate::error::{Error, Result};
use crate::stark::{solve_channels, ChannelTable};

/// Channels until ν_K ≥ `nu_needed`.
pub fn solve_channels_to(ctx: &QuantumContext, nu_needed: f64) -> Result<ChannelTable> {
    let mut k = (nu_needed.max(0.0) as usize) / 2 + 10;
    loop {
        let t = solve_channels(ctx, k)?;
        if t.channels.last().unwrap().nu_f64() >= nu_needed {
            return Ok(t);
        }
        k = k * 5 / 4 + 5;
    }
}

/// Channels sufficient for a γ block up to `l_top` under `cutoff`.
pub fn solve_channels_for_gamma(
    ctx: &QuantumContext,
    cutoff: &CutoffSpec,
    l_top: usize,
) -> Result<ChannelTable> {
    solve_channels_to(ctx, required_nu(ctx, cutoff, l_top))
}

/// Relative stability threshold of γ entries on the plateau.
pub const PLATEAU_TOL: f64 = 1e-2;
/// Threshold for doubling the channel count.
pub const KMAX_TOL: f64 = 1e-3;
/// Highest l − m checked by the scan.
pub const SCAN_SPAN: usize = 6;

#[derive(Clone, Debug)]
pub struct PlateauVariant {
    pub label: String,
    pub cutoff: CutoffSpec,
    /// Largest relative entry change, UOM and GLFT.
    pub uom: f64,
    pub glft: f64,
    pub tol: f64,
}

impl PlateauVariant {
    pub fn passed(&self) -> bool {
        self.uom < self.tol && self.glft < self.tol
    }
}

#[derive(Clone, Debug)]
pub struct PlateauScan {
    pub base: CutoffSpec,
    pub variants: Vec<PlateauVariant>,
}

impl PlateauScan {
    pub fn passed(&self) -> bool {
        self.variants.iter().all(PlateauVariant::passed)
    }

    pub fn worst(&self) -> f64 {
        self.variants
            .iter()
            .map(|v| v.uom.max(v.glft))
            .fold(0.0, f64::max)
    }

    /// Plateau error naming the first failing variant.
    pub fn check(&self) -> Result<()> {
        match self.variants.iter().find(|v| !v.passed()) {
            None => Ok(()),
            Some(v) => Err(Error::Plateau(format!(
                "{}: uom {:.3e}, glft {:.3e} (limit {:.0e})",
                v.label, v.uom, v.glft, v.tol
            ))),
        }
    }

    /// `key=value` lines for output headers.
    pub fn summary_lines(&self) -> Vec<(String, String)> {
        self.variants
            .iter()
            .map(|v| {
                (
                    format!("plateau.{}", v.label),
                    format!(
                        "uom={:.3e};glft={:.3e};tol={:.0e};{}",
                        v.uom,
                        v.glft,
                        v.tol,
                        if v.passed() { "pass" } else { "fail" }
                    ),
                )
            })
            .collect()
    }
}

/// Cutoff variants of the scan: z_c ± 25 %, the other exponential powers
/// in {4, 6, 8}, and a Gaussian with the same z_c.
pub fn scan_variants(base: &CutoffSpec) -> Vec<(String, CutoffSpec)> {
    let mut out = vec![
        ("zc_x0.75".to_string(), base.with_scale(0.75 * base.scale)),
        ("zc_x1.25".to_string(), base.with_scale(1.25 * base.scale)),
    ];
    for p in [4.0, 6.0, 8.0] {
        if base.shape != CutoffShape::ExponentialPower || base.power != p {
            out.push((
                format!("power_{p}"),
                CutoffSpec { shape: CutoffShape::ExponentialPower, power: p, ..*base },
            ));
        }
    }
    out
}

/// γ stability under the scan variants and under doubling the channel count.
/// Deviations are over l, l′ ≤ m + [`SCAN_SPAN`].
pub fn plateau_scan(
    ctx: &QuantumContext,
    base: &CutoffSpec,
    reference: &(GammaMatrix, GammaMatrix),
) -> Result<PlateauScan> {
    let l_hi = (ctx.m + SCAN_SPAN).min(reference.0.l_top);
    let variants = scan_variants(base);
    let need = variants
        .iter()
        .map(|(_, c)| required_nu(ctx, c, l_hi))
        .fold(required_nu(ctx, base, l_hi), f64::max);
    let table = solve_channels_to(ctx, need)?;
    let ru = reference.0.block(l_hi);
    let rg = reference.1.block(l_hi);
    let mut out = Vec::new();
    for (label, c) in variants {
        let (u, g) = gamma_matrices(ctx, &table, l_hi, &c)?;
        out.push(PlateauVariant {
            label,
            cutoff: c,
            uom: max_entry_deviation(&ru, &u.block(l_hi)),
            glft: max_entry_deviation(&rg, &g.block(l_hi)),
            tol: PLATEAU_TOL,
        });
    }
    let doubled = solve_channels(ctx, 2 * reference.0.channels_used)?;
    let (u, g) = gamma_matrices(ctx, &doubled, l_hi, base)?;
    out.push(PlateauVariant {
        label: "kmax_x2".into(),
        cutoff: *base,
        uom: max_entry_deviation(&ru, &u.block(l_hi)),
        glft: max_entry_deviation(&rg, &g.block(l_hi)),
        tol: KMAX_TOL,
    });
    Ok(PlateauScan { base: *base, variants: out })
}
