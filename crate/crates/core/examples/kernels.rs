//! Special-function kernels: Γ/ψ with sign tracking, M, U and P_l^m.
//!
//! cargo run --release --example kernels

use stark_lft::specfun::{digamma, kummer_m, legendre_p, log_gamma_signed, tricomi_u, Dd};

fn main() -> stark_lft::Result<()> {
    for x in [-2.5, -0.5, 0.5, 10.5] {
        let g = log_gamma_signed(x)?;
        println!("x={x:>5}  ln|Γ|={:+.15e} sign={:+}  ψ={:+.15e}", g.log_abs, g.sign, digamma(x)?);
    }

    // M(−n+l+1, 2l+2, 2r/n) and U of the same arguments at n = 10.5, l = 3
    let (a, b) = (-10.5 + 4.0, 8.0);
    for z in [0.5, 2.0, 6.0] {
        println!("z={z}  M={:.15e}  U={:.15e}", kummer_m(a, b, z)?, tricomi_u(a, b, z)?);
    }

    for l in 1..=5 {
        println!("P_{l}^1(0.3) = {:+.15e}", legendre_p(l, 1, 0.3)?);
    }

    let third = Dd::from(1.0) / Dd::from(3.0);
    println!("1/3 in double-double: hi={:e} lo={:e}", third.hi, third.lo);
    Ok(())
}
