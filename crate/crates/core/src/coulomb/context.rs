use crate::error::{Error, Result};

/// Energy and field parameters shared by every calculation.
///
/// `delta = 16 F n⁴` is the barrier parameter; either it or `F` is the input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumContext {
    pub n: f64,
    pub m: usize,
    pub field: f64,
    pub delta: f64,
}

impl QuantumContext {
    pub fn from_field(n: f64, m: usize, field: f64) -> Result<Self> {
        Self::check(n, field)?;
        Ok(QuantumContext {
            n,
            m,
            field,
            delta: 16.0 * field * n.powi(4),
        })
    }

    pub fn from_delta(n: f64, m: usize, delta: f64) -> Result<Self> {
        Self::check(n, delta)?;
        Ok(QuantumContext {
            n,
            m,
            field: delta / (16.0 * n.powi(4)),
            delta,
        })
    }

    fn check(n: f64, f: f64) -> Result<()> {
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Config(format!("n must be positive, got {n}")));
        }
        if !(f >= 0.0) || !f.is_finite() {
            return Err(Error::Config(format!("field must be non-negative, got {f}")));
        }
        Ok(())
    }

    /// E = −1/(2n²)
    pub fn energy(&self) -> f64 {
        -0.5 / (self.n * self.n)
    }

    /// F^{−1/3}, the radius where the field competes with the Coulomb force.
    pub fn field_radius(&self) -> f64 {
        if self.field > 0.0 {
            self.field.powf(-1.0 / 3.0)
        } else {
            f64::INFINITY
        }
    }

    /// Largest r for which the exponential prefactors stay in range.
    pub fn r_max(&self) -> f64 {
        4.0 * self.n * self.n
    }

    /// n₂ = n − n₁ − m − 1 (or μ from ν).
    pub fn partner(&self, nu: f64) -> f64 {
        self.n - nu - self.m as f64 - 1.0
    }
}
