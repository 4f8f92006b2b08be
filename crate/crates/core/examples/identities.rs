//! The two Coulomb expansion identities at n = 10.5: spherical-to-parabolic
//! for the regular function and parabolic expansion of the irregular G_l.
//!
//! cargo run --release --example identities

use stark_lft::coulomb::{FieldGrid, QuantumContext};
use stark_lft::lft::{exact_irregular_identity_residual, regular_lft_identity_residual};

fn main() -> stark_lft::Result<()> {
    let grid = FieldGrid::uniform((1.0, 20.0, 40), (-0.95, 0.95, 39))?;
    for m in [0, 1] {
        let ctx = QuantumContext::from_field(10.5, m, 0.0)?;
        for nu in [0.0, 2.0, 2.37] {
            let res = regular_lft_identity_residual(&ctx, nu, &grid, None, 1e-8)?;
            println!("regular   m={m} ν={nu:<4} l_max={:<3} sup={:.3e}", res.truncation, res.sup());
        }
    }

    let ctx = QuantumContext::from_field(10.5, 1, 0.0)?;
    let grid = FieldGrid::uniform((5.0, 40.0, 36), (-0.9, 0.9, 37))?;
    for l in [1, 3, 5] {
        let res = exact_irregular_identity_residual(&ctx, l, &grid, None, 1e-6)?;
        println!("irregular l={l} n1_max={:<6} sup={:.3e}", res.truncation, res.sup());
    }
    Ok(())
}
