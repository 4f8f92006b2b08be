//! Matched versus exact irregular solution at n = 10.5, m = 1, l = 3, δ = 1.3.
//!
//! cargo run --release --example figure1

use stark_lft::cli::figure_summary;
use stark_lft::matching::{reproduce_figure, FigureSpec};

fn main() -> stark_lft::Result<()> {
    let r = reproduce_figure(&FigureSpec::figure1()?)?;
    for (k, v) in figure_summary(&r) {
        println!("{k}={v}");
    }
    Ok(())
}
