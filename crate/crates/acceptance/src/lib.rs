//! Acceptance criteria 1–8. Each check measures one number (or a few),
//! compares it with a pinned tolerance and a wall-clock limit, and reports
//! one `criterion=…` line.

use std::time::{Duration, Instant};

use stark_lft::cli::oracles;
use stark_lft::matching::{reproduce_figure, FigureResult, FigureSpec, KMAX_TOL, PLATEAU_TOL};
use stark_lft::Result;

pub const REGULAR_TOL: f64 = 1e-8;
pub const IRREGULAR_TOL: f64 = 1e-6;
pub const ZERO_FIELD_NU_TOL: f64 = 1e-6;
pub const ZERO_FIELD_C2_TOL: f64 = 1e-4;
pub const FIGURE1_TOL: f64 = 5e-3;
pub const FIGURE2_TOL: f64 = 5e-4;
pub const EQUIVALENCE_TOL: f64 = 1e-2;
pub const SHAPE_TOL: f64 = 1e-2;
pub const KMAX_DOUBLING_TOL: f64 = 1e-3;
pub const WRONSKIAN_TOL: f64 = 1e-8;
pub const REFLECTION_TOL: f64 = 1e-12;

pub const REGULAR_LIMIT: Duration = Duration::from_secs(30);
pub const IRREGULAR_LIMIT: Duration = Duration::from_secs(120);
pub const FIGURE1_LIMIT: Duration = Duration::from_secs(600);
pub const FIGURE2_LIMIT: Duration = Duration::from_secs(1800);
pub const KERNEL_LIMIT: Duration = Duration::from_secs(10);

/// One measured quantity against its tolerance.
#[derive(Clone, Debug)]
pub struct Measure {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

impl Measure {
    fn new(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Measure { name: name.into(), value, tol }
    }

    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value <= self.tol
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub measures: Vec<Measure>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.measures.iter().all(Measure::passed) && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion={} status={} title=\"{}\"",
            self.id,
            if self.passed() { "pass" } else { "fail" },
            self.title
        );
        for m in &self.measures {
            s.push_str(&format!(" {}={:.3e}/{:.0e}", m.name, m.value, m.tol));
        }
        s.push_str(&format!(" elapsed={:.1}s", self.elapsed.as_secs_f64()));
        if let Some(l) = self.limit {
            s.push_str(&format!(" limit={}s", l.as_secs()));
        }
        s
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let t0 = Instant::now();
    let v = f()?;
    Ok((v, t0.elapsed()))
}

/// Regular expansion, n = 10.5, m ∈ {0, 1}, ν ∈ {0, 2, 2.37}.
pub fn criterion1() -> Result<Criterion> {
    let (worst, elapsed) = timed(|| {
        let mut w = 0.0f64;
        for m in [0, 1] {
            for nu in [0.0, 2.0, 2.37] {
                w = w.max(oracles::regular_identity(10.5, m, nu)?.measured);
            }
        }
        Ok(w)
    })?;
    Ok(Criterion {
        id: 1,
        title: "regular expansion residual",
        measures: vec![Measure::new("sup", worst, REGULAR_TOL)],
        elapsed,
        limit: Some(REGULAR_LIMIT),
    })
}

/// Irregular expansion, n = 10.5, m = 1, l ∈ {1, 3, 5}.
pub fn criterion2() -> Result<Criterion> {
    let (worst, elapsed) = timed(|| {
        let mut w = 0.0f64;
        for l in [1, 3, 5] {
            w = w.max(oracles::irregular_identity(10.5, 1, l)?.measured);
        }
        Ok(w)
    })?;
    Ok(Criterion {
        id: 2,
        title: "irregular expansion residual",
        measures: vec![Measure::new("sup", worst, IRREGULAR_TOL)],
        elapsed,
        limit: Some(IRREGULAR_LIMIT),
    })
}

/// Zero-field limit of the channels at F = 1e−12, k ≤ 10.
pub fn criterion3() -> Result<Criterion> {
    let (r, elapsed) = timed(|| oracles::zero_field(10.5, 1))?;
    Ok(Criterion {
        id: 3,
        title: "zero-field channels",
        measures: vec![
            Measure::new("max_dnu", r[0].measured, ZERO_FIELD_NU_TOL),
            Measure::new("max_dc2", r[1].measured, ZERO_FIELD_C2_TOL),
        ],
        elapsed,
        limit: None,
    })
}

pub fn figure(which: u8) -> Result<(FigureResult, Duration)> {
    timed(|| {
        let spec = if which == 1 { FigureSpec::figure1()? } else { FigureSpec::figure2()? };
        reproduce_figure(&spec)
    })
}

fn figure_criterion(id: u8, r: &FigureResult, elapsed: Duration, tol: f64, limit: Duration) -> Criterion {
    Criterion {
        id,
        title: if id == 4 { "figure 1 difference sup" } else { "figure 2 difference sup" },
        measures: vec![
            Measure::new("sup_uom", r.uom.stats.sup, tol),
            Measure::new("sup_glft", r.glft.stats.sup, tol),
        ],
        elapsed,
        limit: Some(limit),
    }
}

pub fn criterion4(fig1: &(FigureResult, Duration)) -> Criterion {
    figure_criterion(4, &fig1.0, fig1.1, FIGURE1_TOL, FIGURE1_LIMIT)
}

pub fn criterion5(fig2: &(FigureResult, Duration)) -> Criterion {
    figure_criterion(5, &fig2.0, fig2.1, FIGURE2_TOL, FIGURE2_LIMIT)
}

/// Frobenius-normalized γ_UOM vs γ_GLFT over l, l′ ≤ m+6, both sets.
pub fn criterion6(fig1: &FigureResult, fig2: &FigureResult) -> Criterion {
    Criterion {
        id: 6,
        title: "gamma method equivalence",
        measures: vec![
            Measure::new("n10.5", fig1.equivalence, EQUIVALENCE_TOL),
            Measure::new("n28.5", fig2.equivalence, EQUIVALENCE_TOL),
        ],
        elapsed: Duration::ZERO,
        limit: None,
    }
}

/// Cutoff plateau: shape and z_c ± 25% below 1%, k_max doubling below 0.1%.
pub fn criterion7(fig1: &FigureResult, fig2: &FigureResult) -> Criterion {
    assert_eq!((PLATEAU_TOL, KMAX_TOL), (SHAPE_TOL, KMAX_DOUBLING_TOL));
    let mut measures = Vec::new();
    for (tag, r) in [("n10.5", fig1), ("n28.5", fig2)] {
        let mut shape = 0.0f64;
        let mut kmax = 0.0f64;
        for v in &r.plateau.variants {
            let d = v.uom.max(v.glft);
            if v.label.starts_with("kmax") {
                kmax = kmax.max(d);
            } else {
                shape = shape.max(d);
            }
        }
        measures.push(Measure::new(format!("{tag}_shape_zc"), shape, SHAPE_TOL));
        measures.push(Measure::new(format!("{tag}_kmax_x2"), kmax, KMAX_DOUBLING_TOL));
    }
    Criterion { id: 7, title: "cutoff plateau", measures, elapsed: Duration::ZERO, limit: None }
}

/// Wronskians and Γ/ψ reflection.
pub fn criterion8() -> Result<Criterion> {
    let ((kw, rw, refl), elapsed) = timed(|| {
        Ok((oracles::kummer_wronskian()?, oracles::radial_wronskian(10.5)?, oracles::reflection()?))
    })?;
    Ok(Criterion {
        id: 8,
        title: "kernel suite",
        measures: vec![
            Measure::new("kummer_wronskian", kw.measured, WRONSKIAN_TOL),
            Measure::new("radial_wronskian", rw.measured, WRONSKIAN_TOL),
            Measure::new("reflection", refl.measured, REFLECTION_TOL),
        ],
        elapsed,
        limit: Some(KERNEL_LIMIT),
    })
}
