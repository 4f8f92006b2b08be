//! γ by the digamma form (UOM) and the Ω form (GLFT), and their agreement.
//!
//! cargo run --release --example gamma_matrices

use stark_lft::coulomb::QuantumContext;
use stark_lft::matching::{
    frobenius_deviation, gamma_matrices, required_nu, solve_channels_to, CutoffSpec,
};

fn main() -> stark_lft::Result<()> {
    let ctx = QuantumContext::from_delta(10.5, 1, 1.3)?;
    let cutoff = CutoffSpec::default_for(ctx.n);
    let l_top = ctx.m + 6;
    let table = solve_channels_to(&ctx, required_nu(&ctx, &cutoff, l_top))?;
    let (uom, glft) = gamma_matrices(&ctx, &table, l_top, &cutoff)?;
    println!("cutoff {cutoff}, {} channels", table.len());
    println!(" l  l'        uom                glft");
    for l in ctx.m..=l_top {
        for lp in ctx.m..=l_top {
            println!("{l:2} {lp:2}  {:+.10e}  {:+.10e}", uom.get(l, lp), glft.get(l, lp));
        }
    }
    let d = frobenius_deviation(&uom.block(l_top), &glft.block(l_top));
    println!("Frobenius-normalized difference {d:.3e}");
    Ok(())
}
