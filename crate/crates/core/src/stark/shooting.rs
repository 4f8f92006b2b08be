//! Independent ξ channel solver: Numerov integration in t = ln ξ with
//! bisection on the node count, Richardson-extrapolated in the step.
//!
//! With χ(ξ) = w(t) the channel equation becomes
//! w″ + q(t) w = 0, q = βξ − ξ²/(4n²) − Fξ³/4 − m²/4.

use crate::coulomb::QuantumContext;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ShootingChannel {
    pub beta: f64,
    pub nu: f64,
    pub c: f64,
}

const XI_START: f64 = 1e-3;
/// ∫√(−q) dt beyond the turning point before the integration stops.
const BARRIER_ACTION: f64 = 45.0;
const BISECTIONS: usize = 64;

struct Problem {
    n: f64,
    m: f64,
    field: f64,
}

impl Problem {
    fn q(&self, beta: f64, t: f64) -> f64 {
        let xi = t.exp();
        beta * xi - xi * xi / (4.0 * self.n * self.n) - 0.25 * self.field * xi.powi(3)
            - 0.25 * self.m * self.m
    }

    /// w from the small-ξ power series, w ≈ ξ^{m/2}(1 − βξ/(m+1)).
    fn series(&self, beta: f64, xi: f64) -> f64 {
        let mut a = [1.0, 0.0, 0.0];
        let mut sum = 1.0;
        let mut p = 1.0;
        for k in 1..200 {
            let ak = -(beta * a[0] - a[1] / (4.0 * self.n * self.n) - 0.25 * self.field * a[2])
                / (k as f64 * (k as f64 + self.m));
            a = [ak, a[0], a[1]];
            p *= xi;
            sum += ak * p;
            if (ak * p).abs() < 1e-18 * sum.abs() && k > 3 {
                break;
            }
        }
        xi.powf(0.5 * self.m) * sum
    }

    /// ln of the outer turning point, ignoring the centrifugal term.
    fn t_turn(&self, beta: f64) -> f64 {
        let a = 0.25 / (self.n * self.n);
        let xi_t = (-a + (a * a + self.field * beta.max(0.0)).sqrt()) / (0.5 * self.field);
        xi_t.max(1.0).ln()
    }

    /// End of the t range for a given β.
    fn t_end(&self, beta: f64) -> f64 {
        let mut t = self.t_turn(beta);
        let mut s = 0.0;
        let h = 1e-3;
        while s < BARRIER_ACTION {
            let q = self.q(beta, t);
            if q < 0.0 {
                s += (-q).sqrt() * h;
            }
            t += h;
        }
        t
    }

    /// Integrates w; returns (node count, ∫w² dξ up to the decay minimum).
    fn integrate(&self, beta: f64, t_end: f64, steps: usize) -> (usize, f64) {
        let t0 = XI_START.ln();
        let h = (t_end - t0) / steps as f64;
        let h2 = h * h / 12.0;
        let mut w0 = self.series(beta, t0.exp());
        let mut w1 = self.series(beta, (t0 + h).exp());
        let mut q0 = self.q(beta, t0);
        let mut q1 = self.q(beta, t0 + h);
        let t_turn = self.t_turn(beta);
        let integral = simpson_head(self.m, t0.exp());
        let mut acc = [w0 * w0 * t0.exp(), w1 * w1 * (t0 + h).exp()];
        let mut odd = true;
        let mut body = 0.0;
        let mut nodes = 0;
        let mut best = f64::INFINITY;
        let mut frozen = false;
        for i in 2..=steps {
            let t = t0 + i as f64 * h;
            let q2 = self.q(beta, t);
            let w2 = (2.0 * w1 * (1.0 - 5.0 * h2 * q1) - w0 * (1.0 + h2 * q0)) / (1.0 + h2 * q2);
            if w2 != 0.0 && (w2 > 0.0) != (w1 > 0.0) {
                nodes += 1;
            }
            let f2 = w2 * w2 * t.exp();
            if !frozen {
                if odd {
                    body += (acc[0] + 4.0 * acc[1] + f2) * h / 3.0;
                }
                odd = !odd;
                acc = [acc[1], f2];
                if t > t_turn {
                    if w2.abs() > best {
                        frozen = true;
                    }
                    best = best.min(w2.abs());
                }
            }
            (w0, w1, q0, q1) = (w1, w2, q1, q2);
            if w1.abs() > 1e150 {
                // only reached in the growing tail, after the norm is frozen
                w0 /= 1e150;
                w1 /= 1e150;
            }
        }
        (nodes, integral + body)
    }
}

/// ∫₀^{ξ₀} ξ^m dξ, the part of the norm below the integration start.
fn simpson_head(m: f64, xi0: f64) -> f64 {
    xi0.powf(m + 1.0) / (m + 1.0)
}

/// Channel k (1-based) by shooting. `steps` sets the coarse grid; the
/// result is extrapolated from `steps` and `2·steps`.
pub fn shoot_channel(ctx: &QuantumContext, k: usize, steps: usize) -> Result<ShootingChannel> {
    if !(ctx.field > 0.0) || k == 0 {
        return Err(Error::Domain("shooting needs F > 0 and k ≥ 1".into()));
    }
    let p = Problem {
        n: ctx.n,
        m: ctx.m as f64,
        field: ctx.field,
    };
    let run = |steps: usize| -> Result<(f64, f64)> {
        let mut hi = (k as f64 + ctx.m as f64) / ctx.n;
        let mut t_end = p.t_end(hi);
        let mut tries = 0;
        while p.integrate(hi, t_end, steps).0 < k {
            hi *= 2.0;
            t_end = p.t_end(hi);
            tries += 1;
            if tries > 60 {
                return Err(Error::NonConvergence(format!("no bracket for channel {k}")));
            }
        }
        let mut lo = 0.0;
        for _ in 0..BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if p.integrate(mid, t_end, steps).0 >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let beta = 0.5 * (lo + hi);
        let norm = p.integrate(beta, t_end, steps).1;
        Ok((beta, ctx.n.powf(0.5 * ctx.m as f64) / norm.sqrt()))
    };
    let (b1, c1) = run(steps)?;
    let (b2, c2) = run(2 * steps)?;
    let beta = (16.0 * b2 - b1) / 15.0;
    let c = (16.0 * c2 - c1) / 15.0;
    Ok(ShootingChannel {
        beta,
        nu: ctx.n * beta - 0.5 * (ctx.m as f64 + 1.0),
        c,
    })
}
