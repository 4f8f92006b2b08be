//! Cutoff independence of γ: scale, power and k_max variants.
//!
//! cargo run --release --example plateau_scan

use stark_lft::coulomb::QuantumContext;
use stark_lft::matching::{
    gamma_matrices, plateau_scan, solve_channels_for_gamma, CutoffSpec, SCAN_SPAN,
};

fn main() -> stark_lft::Result<()> {
    for n in [10.5, 28.5] {
        let ctx = QuantumContext::from_delta(n, 1, 1.3)?;
        let cutoff = CutoffSpec::default_for(n);
        let l_top = ctx.m + SCAN_SPAN;
        let table = solve_channels_for_gamma(&ctx, &cutoff, l_top)?;
        let pair = gamma_matrices(&ctx, &table, l_top, &cutoff)?;
        let scan = plateau_scan(&ctx, &cutoff, &pair)?;
        println!("n = {n}: base {cutoff}");
        for (k, v) in scan.summary_lines() {
            println!("  {k} {v}");
        }
    }
    Ok(())
}
