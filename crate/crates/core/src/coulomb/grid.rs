use crate::error::{Error, Result};

/// One evaluation point with its parabolic images.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridNode {
    pub r: f64,
    pub cos_theta: f64,
    pub xi: f64,
    pub eta: f64,
    /// η below the floor: computed, but excluded from statistics.
    pub flagged: bool,
}

/// Rectangular (r, cosθ) grid, row-major in r.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    pub r_values: Vec<f64>,
    pub costheta_values: Vec<f64>,
    /// Absolute floor on η.
    pub eta_min: f64,
}

impl FieldGrid {
    pub const DEFAULT_ETA_MIN: f64 = 0.05;

    pub fn new(r_values: Vec<f64>, costheta_values: Vec<f64>) -> Result<Self> {
        if r_values.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
            return Err(Error::Domain("grid radii must be positive".into()));
        }
        if costheta_values.iter().any(|&c| !(-1.0..=1.0).contains(&c)) {
            return Err(Error::Domain("grid cosθ values must lie in [-1, 1]".into()));
        }
        Ok(FieldGrid {
            r_values,
            costheta_values,
            eta_min: Self::DEFAULT_ETA_MIN,
        })
    }

    /// `count` equally spaced points on [lo, hi] in both directions.
    pub fn uniform(r: (f64, f64, usize), c: (f64, f64, usize)) -> Result<Self> {
        Self::new(linspace(r.0, r.1, r.2), linspace(c.0, c.1, c.2))
    }

    pub fn with_eta_min(mut self, eta_min: f64) -> Self {
        self.eta_min = eta_min;
        self
    }

    pub fn len(&self) -> usize {
        self.r_values.len() * self.costheta_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, i: usize) -> GridNode {
        let nc = self.costheta_values.len();
        let r = self.r_values[i / nc];
        let c = self.costheta_values[i % nc];
        let (xi, eta) = to_parabolic(r, c);
        GridNode {
            r,
            cos_theta: c,
            xi,
            eta,
            flagged: eta < self.eta_min * (1.0 - 1e-12),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = GridNode> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    pub fn r_max(&self) -> f64 {
        self.r_values.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// (r, cosθ) → (ξ, η)
pub fn to_parabolic(r: f64, cos_theta: f64) -> (f64, f64) {
    (r * (1.0 + cos_theta), r * (1.0 - cos_theta))
}

/// (ξ, η) → (r, cosθ)
pub fn from_parabolic(xi: f64, eta: f64) -> (f64, f64) {
    let r = 0.5 * (xi + eta);
    (r, (xi - eta) / (xi + eta))
}
