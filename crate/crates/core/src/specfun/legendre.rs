//! Associated Legendre functions of the first kind on [−1, 1].

use crate::error::{Error, Result};

/// Phase convention for P_l^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegendrePhase {
    /// Includes the (−1)^m Condon–Shortley factor. This is the convention
    /// under which the regular frame transformation holds.
    CondonShortley,
    /// Ferrers form (1−u²)^{m/2} dᵐP_l/duᵐ without the factor.
    Ferrers,
}

pub const DEFAULT_PHASE: LegendrePhase = LegendrePhase::CondonShortley;

fn check(l: usize, m: usize, u: f64) -> Result<()> {
    if m > l {
        return Err(Error::Domain(format!("legendre m={m} > l={l}")));
    }
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("legendre u={u} outside [-1,1]")));
    }
    Ok(())
}

/// P_l^m(u) for l = m..=l_max, by upward recurrence in l.
pub fn legendre_p_row(l_max: usize, m: usize, u: f64, phase: LegendrePhase) -> Result<Vec<f64>> {
    check(l_max, m, u)?;
    let s = ((1.0 - u) * (1.0 + u)).sqrt();
    let mut pmm = 1.0;
    for j in 0..m {
        pmm *= (2 * j + 1) as f64 * s;
    }
    if phase == LegendrePhase::CondonShortley && m % 2 == 1 {
        pmm = -pmm;
    }
    let mut out = Vec::with_capacity(l_max - m + 1);
    out.push(pmm);
    if l_max == m {
        return Ok(out);
    }
    let mut prev = pmm;
    let mut cur = u * (2 * m + 1) as f64 * pmm;
    out.push(cur);
    for l in (m + 2)..=l_max {
        let next = ((2 * l - 1) as f64 * u * cur - (l + m - 1) as f64 * prev) / (l - m) as f64;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// P_l^m(u) in the library's default convention.
pub fn legendre_p(l: usize, m: usize, u: f64) -> Result<f64> {
    legendre_p_with_phase(l, m, u, DEFAULT_PHASE)
}

pub fn legendre_p_with_phase(l: usize, m: usize, u: f64, phase: LegendrePhase) -> Result<f64> {
    Ok(*legendre_p_row(l, m, u, phase)?.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_and_low_order() {
        assert_eq!(legendre_p(4, 2, 1.0).unwrap(), 0.0);
        assert_eq!(legendre_p(2, 0, 1.0).unwrap(), 1.0);
        assert_eq!(legendre_p(3, 1, 0.0).unwrap(), 1.5);
        assert_eq!(
            legendre_p_with_phase(3, 1, 0.0, LegendrePhase::Ferrers).unwrap(),
            -1.5
        );
    }
}
