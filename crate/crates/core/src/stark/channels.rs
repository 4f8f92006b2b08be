use rayon::prelude::*;

use super::basis::{eigen_f64, refine_eigenpair, stark_matrix};
use crate::coulomb::{norm_nn1_sq_table, parabolic_regular_f, QuantumContext};
use crate::error::{Error, Result};
use crate::specfun::{kummer_m_descending, Dd};
use crate::table::Table;

/// One ξ eigenchannel at fixed energy and field.
#[derive(Clone, Debug)]
pub struct StarkChannel {
    /// 1-based; ν_k increases with k and channel k has k−1 nodes in ξ.
    pub k: usize,
    pub beta: Dd,
    /// n β − (m+1)/2
    pub nu: Dd,
    /// n − ν − m − 1
    pub mu: Dd,
    /// lim_{ξ→0} χ_k(ξ)/f_{ν_k}(ξ), positive.
    pub c: Dd,
    /// Expansion of χ_k over the unit-norm zero-field functions φ_j.
    pub coeffs: Vec<f64>,
}

impl StarkChannel {
    pub fn nu_f64(&self) -> f64 {
        self.nu.to_f64()
    }
    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64()
    }
    pub fn c_f64(&self) -> f64 {
        self.c.to_f64()
    }
}

/// The solved channel set plus the basis it came from.
#[derive(Clone, Debug)]
pub struct ChannelTable {
    pub ctx: QuantumContext,
    pub channels: Vec<StarkChannel>,
    pub basis_size: usize,
}

/// Largest |coefficient| tolerated in the last basis functions.
const TAIL_TOL: f64 = 1e-30;

/// Channels k = 1..=k_max.
///
/// The basis grows until every returned eigenvector has negligible weight on
/// its last functions, so the channel data are converged to double-double
/// level, not just to the f64 seed.
pub fn solve_channels(ctx: &QuantumContext, k_max: usize) -> Result<ChannelTable> {
    if !(ctx.field > 0.0) {
        return Err(Error::Domain("channels need a positive field".into()));
    }
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let mut size = 2 * k_max + 60;
    for _ in 0..8 {
        if size > 6000 {
            break;
        }
        match solve_in_basis(ctx, k_max, size)? {
            Some(t) => return Ok(t),
            None => size = size * 3 / 2,
        }
    }
    Err(Error::Range(format!(
        "k_max = {k_max} needs a basis beyond {size} functions"
    )))
}

fn solve_in_basis(ctx: &QuantumContext, k_max: usize, size: usize) -> Result<Option<ChannelTable>> {
    let h = stark_matrix(ctx.n, ctx.m, ctx.field, size);
    let seeds = eigen_f64(&h, k_max)?;
    let tail = |v: &[f64]| v[size - 4..].iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if seeds.iter().any(|(_, v)| tail(v) > 1e-12) {
        return Ok(None);
    }
    let nsq = norm_nn1_sq_table(ctx, size);
    let norms: Vec<Dd> = nsq.iter().map(|x| x.sqrt()).collect();
    let refined: Vec<(Dd, Vec<Dd>)> = seeds
        .par_iter()
        .map(|(b, v)| refine_eigenpair(&h, *b, v))
        .collect::<Result<_>>()?;
    if refined.iter().any(|(_, v)| {
        v[size - 4..].iter().fold(0.0f64, |a, x| a.max(x.hi.abs())) > TAIL_TOL
    }) {
        return Ok(None);
    }
    let n = Dd::new(ctx.n);
    let mf = ctx.m as f64;
    let channels = refined
        .into_iter()
        .enumerate()
        .map(|(i, (beta, v))| {
            let c: Dd = v.iter().zip(&norms).map(|(a, b)| *a * *b).sum();
            let sign = c.signum();
            let nu = n * beta - (mf + 1.0) / 2.0;
            StarkChannel {
                k: i + 1,
                beta,
                nu,
                mu: n - nu - (mf + 1.0),
                c: c * sign,
                coeffs: v.iter().map(|x| x.to_f64() * sign).collect(),
            }
        })
        .collect();
    Ok(Some(ChannelTable {
        ctx: *ctx,
        channels,
        basis_size: size,
    }))
}

impl ChannelTable {
    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// χ_k(ξ) from its basis expansion.
    pub fn chi(&self, k: usize, xi: f64) -> Result<f64> {
        let ch = &self.channels[k - 1];
        let ctx = &self.ctx;
        let x = xi / ctx.n;
        let count = ch.coeffs.len();
        let ms = kummer_m_descending(0.0, ctx.m as f64 + 1.0, x, count)?;
        let nsq = norm_nn1_sq_table(ctx, count);
        let pref = if ctx.m == 0 {
            (-0.5 * x).exp()
        } else if x == 0.0 {
            0.0
        } else {
            (0.5 * ctx.m as f64 * x.ln() - 0.5 * x).exp()
        };
        let s: Dd = (0..count)
            .map(|j| Dd::new(ch.coeffs[j]) * nsq[j].sqrt() * ms[j])
            .sum();
        Ok(s.to_f64() * pref)
    }

    /// Sign changes of χ_k on (0, ξ_end] sampled at `samples` points.
    pub fn node_count(&self, k: usize, xi_end: f64, samples: usize) -> Result<usize> {
        let mut prev = 0.0;
        let mut nodes = 0;
        for i in 1..=samples {
            let xi = xi_end * (i as f64 / samples as f64).powi(2);
            let v = self.chi(k, xi)?;
            if prev != 0.0 && v != 0.0 && (v > 0.0) != (prev > 0.0) {
                nodes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        Ok(nodes)
    }

    /// Outer classical turning point of channel k in ξ:
    /// largest root of β − ξ/(4n²) − Fξ²/4 − m²/(4ξ) = 0.
    pub fn turning_point(&self, k: usize) -> f64 {
        let beta = self.channels[k - 1].beta.to_f64();
        let (n, f) = (self.ctx.n, self.ctx.field);
        let a = 0.25 / (n * n);
        (-a + (a * a + f * beta).sqrt()) / (0.5 * f)
    }

    pub fn to_table(&self, fit: Option<&[f64]>) -> Table {
        let mut t = Table::new(["k", "beta", "nu", "mu", "c", "fit_residual"]);
        for (i, ch) in self.channels.iter().enumerate() {
            t.push(vec![
                ch.k as f64,
                ch.beta.to_f64(),
                ch.nu.to_f64(),
                ch.mu.to_f64(),
                ch.c.to_f64(),
                fit.map(|f| f[i]).unwrap_or(f64::NAN),
            ]);
        }
        t
    }
}

/// Least-squares c from χ_k/f_{ν_k} sampled on a ξ window.
#[derive(Clone, Copy, Debug)]
pub struct MatchFit {
    pub c: f64,
    /// ‖χ − c f‖ / ‖χ‖ on the window.
    pub residual: f64,
}

/// Threshold above which a window fit is rejected.
pub const WINDOW_FIT_LIMIT: f64 = 1e-3;

/// Default window: from 0.2 to 0.05 F^{−1/3}, but at least a decade wide.
pub fn default_window(ctx: &QuantumContext) -> (f64, f64) {
    let hi = (0.05 * ctx.field_radius()).max(2.0);
    (0.2, hi)
}

pub fn channel_match_c(table: &ChannelTable, k: usize, window: (f64, f64)) -> Result<MatchFit> {
    let ch = &table.channels[k - 1];
    let (a, b) = window;
    if !(a > 0.0 && b > a) {
        return Err(Error::Domain(format!("bad ξ window [{a}, {b}]")));
    }
    let pts = 64;
    let mut sff = 0.0;
    let mut scf = 0.0;
    let mut scc = 0.0;
    let mut samples = Vec::with_capacity(pts);
    for i in 0..pts {
        let xi = a * (b / a).powf(i as f64 / (pts - 1) as f64);
        let chi = table.chi(k, xi)?;
        let f = parabolic_regular_f(&table.ctx, ch.nu_f64(), xi)?;
        sff += f * f;
        scf += chi * f;
        scc += chi * chi;
        samples.push((chi, f));
    }
    let c = scf / sff;
    let res: f64 = samples.iter().map(|(x, f)| (x - c * f).powi(2)).sum();
    let residual = (res / scc).sqrt();
    if residual > WINDOW_FIT_LIMIT {
        return Err(Error::Window(format!(
            "channel {k}: fit residual {residual:.3e} on [{a}, {b}]"
        )));
    }
    Ok(MatchFit { c, residual })
}
