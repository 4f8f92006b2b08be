//! Same comparison at n = 28.5 on r ∈ [10, 80].
//!
//! cargo run --release --example figure2

use stark_lft::cli::figure_summary;
use stark_lft::matching::{reproduce_figure, FigureSpec};

fn main() -> stark_lft::Result<()> {
    let r = reproduce_figure(&FigureSpec::figure2()?)?;
    for (k, v) in figure_summary(&r) {
        println!("{k}={v}");
    }
    Ok(())
}
