//! Field-confined ξ channels at n = 10.5, m = 1, δ = 1.3, compared with
//! Numerov shooting.
//!
//! cargo run --release --example stark_channels

use stark_lft::coulomb::QuantumContext;
use stark_lft::stark::{shoot_channel, solve_channels};

fn main() -> stark_lft::Result<()> {
    let ctx = QuantumContext::from_delta(10.5, 1, 1.3)?;
    let table = solve_channels(&ctx, 12)?;
    println!("F = {:.6e}, basis size {}", ctx.field, table.basis_size);
    println!("  k        ν                 μ                 c          |Δν| shooting");
    for ch in &table.channels {
        let s = shoot_channel(&ctx, ch.k, 20000)?;
        println!(
            "{:3}  {:.12}  {:+.12}  {:.12}  {:.1e}",
            ch.k,
            ch.nu_f64(),
            ch.mu_f64(),
            ch.c_f64(),
            (s.nu - ch.nu_f64()).abs()
        );
    }
    Ok(())
}
