use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::Dd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutoffShape {
    /// exp(−(z/z_c)²)
    Gaussian,
    /// exp(−(z/z_c)^p)
    ExponentialPower,
    /// 1 for z ≤ z_c, 0 beyond.
    Sharp,
}

impl fmt::Display for CutoffShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutoffShape::Gaussian => "gaussian",
            CutoffShape::ExponentialPower => "exponential-power",
            CutoffShape::Sharp => "sharp",
        })
    }
}

impl FromStr for CutoffShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(CutoffShape::Gaussian),
            "exponential-power" | "exp-power" => Ok(CutoffShape::ExponentialPower),
            "sharp" => Ok(CutoffShape::Sharp),
            _ => Err(Error::Config(format!("unknown cutoff shape '{s}'"))),
        }
    }
}

/// Weight F_cut(z) applied in the ν (or n₁) variable to both divergent sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffSpec {
    pub shape: CutoffShape,
    /// z_c, in units of ν.
    pub scale: f64,
    /// p for the exponential-power shape.
    pub power: f64,
}

/// Default power of the exponential-power shape.
pub const DEFAULT_POWER: f64 = 8.0;
/// Smallest accepted exponential power.
pub const MIN_POWER: f64 = 1.5;
/// Default z_c in units of n.
pub const DEFAULT_SCALE_OVER_N: f64 = 4.0;

impl CutoffSpec {
    pub fn new(shape: CutoffShape, scale: f64, power: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Config(format!("cutoff scale must be positive, got {scale}")));
        }
        // exp(−10^p) < 1e−12 needs p > 1.44
        if shape == CutoffShape::ExponentialPower && !(power >= MIN_POWER && power.is_finite()) {
            return Err(Error::Config(format!("cutoff power must be >= {MIN_POWER}, got {power}")));
        }
        Ok(CutoffSpec { shape, scale, power })
    }

    pub fn default_for(n: f64) -> Self {
        CutoffSpec {
            shape: CutoffShape::ExponentialPower,
            scale: DEFAULT_SCALE_OVER_N * n,
            power: DEFAULT_POWER,
        }
    }

    pub fn with_scale(self, scale: f64) -> Self {
        CutoffSpec { scale, ..self }
    }

    fn exponent(&self) -> f64 {
        match self.shape {
            CutoffShape::Gaussian => 2.0,
            CutoffShape::ExponentialPower => self.power,
            CutoffShape::Sharp => f64::INFINITY,
        }
    }

    pub fn weight(&self, z: f64) -> f64 {
        let t = z.max(0.0) / self.scale;
        match self.shape {
            CutoffShape::Sharp => {
                if t <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            _ => (-t.powf(self.exponent())).exp(),
        }
    }

    /// F_cut(z) in double-double; the γ sums cancel far below f64 resolution.
    pub fn weight_dd(&self, z: Dd) -> Dd {
        if z.hi <= 0.0 {
            return Dd::ONE;
        }
        let t = z / self.scale;
        match self.shape {
            CutoffShape::Sharp => Dd::new(self.weight(z.hi)),
            CutoffShape::Gaussian => (-t.sqr()).exp(),
            CutoffShape::ExponentialPower => {
                let p = self.power;
                let tp = if p == p.round() && p.abs() < 64.0 {
                    t.powi(p as i32)
                } else {
                    (t.ln() * p).exp()
                };
                (-tp).exp()
            }
        }
    }

    /// Smallest z beyond which F_cut(z)·(z/z_c)^degree < tol.
    pub fn reach(&self, degree: usize, tol: f64) -> f64 {
        if self.shape == CutoffShape::Sharp {
            return self.scale;
        }
        let p = self.exponent();
        let target = -tol.ln();
        // solve t^p − d ln t = target for t ≥ 1 by fixed point
        let mut t = target.powf(1.0 / p).max(1.0);
        for _ in 0..100 {
            t = (target + degree as f64 * t.ln()).powf(1.0 / p).max(1.0);
        }
        t * self.scale
    }
}

impl fmt::Display for CutoffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(z_c={}", self.shape, self.scale)?;
        if self.shape == CutoffShape::ExponentialPower {
            write!(f, ",p={}", self.power)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reach_bounds_weighted_tail() {
        let c = CutoffSpec::default_for(10.5);
        let z = c.reach(20, 1e-30);
        let t = z / c.scale;
        assert!(c.weight(z) * t.powi(20) <= 1.01e-30);
        assert!(c.weight(0.9 * z) * (0.9 * t).powi(20) > 1e-30);
    }
}
