use std::fmt;

use rayon::prelude::*;

use super::cutoff::CutoffSpec;
use crate::coulomb::{norm_nlm_dd, norm_nn1_sq_table, wronskian_w, QuantumContext};
use crate::error::{Error, Result};
use crate::lft::{omega_dd, PSumCoefficients};
use crate::specfun::gamma::factorial_dd;
use crate::specfun::Dd;
use crate::stark::ChannelTable;
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMethod {
    /// Ǎ-matrix construction with the digamma combination.
    Uom,
    /// Ω-function construction.
    Glft,
}

impl fmt::Display for GammaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaMethod::Uom => "uom",
            GammaMethod::Glft => "glft",
        })
    }
}

/// γ_{l,l′} for l, l′ ∈ [m, l_top].
#[derive(Clone, Debug)]
pub struct GammaMatrix {
    pub method: GammaMethod,
    pub ctx: QuantumContext,
    pub cutoff: CutoffSpec,
    pub l_top: usize,
    /// entries[l−m][l′−m]
    pub entries: Vec<Vec<f64>>,
    /// Stark channels entering the sums.
    pub channels_used: usize,
    /// Largest n₁ of the Coulomb sum.
    pub n1_max: usize,
}

impl GammaMatrix {
    pub fn get(&self, l: usize, lp: usize) -> f64 {
        self.entries[l - self.ctx.m][lp - self.ctx.m]
    }

    /// Square block l, l′ ∈ [m, l_hi].
    pub fn block(&self, l_hi: usize) -> Vec<Vec<f64>> {
        let d = l_hi.min(self.l_top) - self.ctx.m + 1;
        self.entries[..d].iter().map(|r| r[..d].to_vec()).collect()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["l", "l_prime", "gamma"]);
        let m = self.ctx.m;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.push(vec![(i + m) as f64, (j + m) as f64, *v]);
            }
        }
        t
    }
}

/// ‖a − b‖_F / ‖a‖_F.
pub fn frobenius_deviation(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            num += (x - y) * (x - y);
            den += x * x;
        }
    }
    (num / den).sqrt()
}

/// Largest |a_ij − b_ij| / |a_ij|.
pub fn max_entry_deviation(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            worst = worst.max((x - y).abs() / x.abs());
        }
    }
    worst
}

/// Weighted-tail tolerance defining how far in ν the sums are carried.
pub const TAIL_TOL: f64 = 1e-34;

/// Largest ν needed for a γ block up to `l_top`: beyond it the cutoff times
/// the ν^{l+l′} growth of the summands is below [`TAIL_TOL`].
pub fn required_nu(ctx: &QuantumContext, cutoff: &CutoffSpec, l_top: usize) -> f64 {
    cutoff.reach(2 * (l_top - ctx.m), TAIL_TOL)
}

/// Per-ν data: A_l, Ǎ_l for l ∈ [m, l_top] and Ω(μ).
struct Row {
    a: Vec<Dd>,
    a_breve: Vec<Dd>,
    omega: Dd,
}

fn row(coefs: &[PSumCoefficients], n: f64, m: usize, nu: Dd, mu: Dd) -> Result<Row> {
    Ok(Row {
        a: coefs.iter().map(|c| c.a(nu, mu)).collect(),
        a_breve: coefs.iter().map(|c| c.a_breve(nu, mu)).collect::<Result<_>>()?,
        omega: omega_dd(n, m, mu)?,
    })
}

/// Both γ constructions from one pass over the Coulomb and Stark sums.
///
/// Every channel of the table enters; the table must reach [`required_nu`].
/// The Coulomb sum runs to n₁ = ⌊ν⌋ of the last channel.
pub fn gamma_matrices(
    ctx: &QuantumContext,
    table: &ChannelTable,
    l_top: usize,
    cutoff: &CutoffSpec,
) -> Result<(GammaMatrix, GammaMatrix)> {
    let m = ctx.m;
    if l_top < m {
        return Err(Error::Domain(format!("l_top = {l_top} below m = {m}")));
    }
    let need = required_nu(ctx, cutoff, l_top);
    let used = &table.channels;
    let last = used.last().map(|c| c.nu_f64()).unwrap_or(0.0);
    if last < need {
        return Err(Error::Range(format!(
            "channels reach ν = {last:.3}, the cutoff tail needs {need:.3}"
        )));
    }
    let n1_max = used.last().unwrap().nu.hi.floor() as usize;
    let coefs: Vec<PSumCoefficients> = (m..=l_top).map(|l| PSumCoefficients::new(l, m)).collect();
    let nd = Dd::new(ctx.n);
    let shift = m as f64 + 1.0;

    let nsq = norm_nn1_sq_table(ctx, n1_max + 1);
    // (weight, row) for every term, Coulomb first with +, Stark with −
    let coulomb: Vec<(Dd, Row)> = (0..=n1_max)
        .into_par_iter()
        .map(|j| {
            let nu = Dd::new(j as f64);
            let w = cutoff.weight_dd(nu) * nsq[j];
            Ok((w, row(&coefs, ctx.n, m, nu, nd - nu - shift)?))
        })
        .collect::<Result<_>>()?;
    let stark: Vec<(Dd, Row)> = used
        .par_iter()
        .map(|ch| {
            let w = -(cutoff.weight_dd(ch.nu) * ch.c.sqr());
            Ok((w, row(&coefs, ctx.n, m, ch.nu, ch.mu)?))
        })
        .collect::<Result<_>>()?;

    let d = l_top - m + 1;
    let mut su = vec![vec![Dd::ZERO; d]; d];
    let mut sg = vec![vec![Dd::ZERO; d]; d];
    for (w, r) in coulomb.iter().chain(stark.iter()) {
        for i in 0..d {
            let wa = *w * r.a[i];
            let wao = wa * r.omega;
            for j in 0..d {
                su[i][j] += wa * r.a_breve[j];
                sg[i][j] += wao * r.a[j];
            }
        }
    }
    let mf = factorial_dd(m);
    let mut gu = vec![vec![0.0; d]; d];
    let mut gg = vec![vec![0.0; d]; d];
    for i in 0..d {
        let l = m + i;
        let w = wronskian_w(ctx, l)?.to_f64();
        if !w.is_finite() {
            return Err(Error::Overflow(format!("W_l at l = {l}")));
        }
        let pre = Dd::new(w) / norm_nlm_dd(l, m);
        for j in 0..d {
            gu[i][j] = (pre * su[i][j]).to_f64();
            gg[i][j] = (pre * sg[i][j] / (mf * mf)).to_f64();
        }
    }
    let make = |method, entries| GammaMatrix {
        method,
        ctx: *ctx,
        cutoff: *cutoff,
        l_top,
        entries,
        channels_used: used.len(),
        n1_max,
    };
    Ok((make(GammaMethod::Uom, gu), make(GammaMethod::Glft, gg)))
}

/// Single γ^UOM entry.
pub fn gamma_uom(
    ctx: &QuantumContext,
    table: &ChannelTable,
    l: usize,
    l_prime: usize,
    cutoff: &CutoffSpec,
) -> Result<f64> {
    Ok(gamma_matrices(ctx, table, l.max(l_prime), cutoff)?.0.get(l, l_prime))
}

/// Single γ^GLFT entry.
pub fn gamma_glft(
    ctx: &QuantumContext,
    table: &ChannelTable,
    l: usize,
    l_prime: usize,
    cutoff: &CutoffSpec,
) -> Result<f64> {
    Ok(gamma_matrices(ctx, table, l.max(l_prime), cutoff)?.1.get(l, l_prime))
}
