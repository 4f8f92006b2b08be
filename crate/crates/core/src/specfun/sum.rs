//! Deterministic summation helpers.

use super::dd::Dd;

/// Pairwise (tree) sum; the reduction order depends only on the length.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Sum accumulated in double-double, rounded once.
pub fn dd_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(Dd::ZERO, |acc, x| acc + x).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(dd_sum(xs), 2.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }
}
