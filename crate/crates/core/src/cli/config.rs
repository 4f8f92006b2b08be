use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::coulomb::{FieldGrid, QuantumContext};
use crate::error::{Error, Result};
use crate::matching::{CutoffShape, CutoffSpec, DEFAULT_POWER, DEFAULT_SCALE_OVER_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodSelector {
    Uom,
    Glft,
    Both,
}

impl fmt::Display for MethodSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodSelector::Uom => "uom",
            MethodSelector::Glft => "glft",
            MethodSelector::Both => "both",
        })
    }
}

impl FromStr for MethodSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uom" => Ok(MethodSelector::Uom),
            "glft" => Ok(MethodSelector::Glft),
            "both" => Ok(MethodSelector::Both),
            _ => Err(Error::Config(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Standard,
    Extended,
}

impl Precision {
    /// Weight below which terms of the matched-field channel sum are dropped.
    pub fn field_weight_tol(self) -> f64 {
        match self {
            Precision::Standard => 1e-20,
            Precision::Extended => 1e-30,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        })
    }
}

impl FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Precision::Standard),
            "extended" => Ok(Precision::Extended),
            _ => Err(Error::Config(format!("unknown precision '{s}'"))),
        }
    }
}

/// Field strength as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldInput {
    Field(f64),
    Delta(f64),
}

/// `lo:hi:count`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl fmt::Display for AxisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
    }
}

impl FromStr for AxisSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Config(format!("axis '{s}' is not lo:hi:count"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !(lo.is_finite() && hi.is_finite()) || hi < lo || count == 0 {
            return Err(bad());
        }
        Ok(AxisSpec { lo, hi, count })
    }
}

/// Fully resolved run parameters. Every output file starts with
/// [`RunConfig::render`], and [`RunConfig::parse`] reads it back.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: f64,
    pub m: usize,
    pub field: FieldInput,
    pub l: usize,
    pub l_top: Option<usize>,
    pub k_max: Option<usize>,
    pub cutoff_shape: CutoffShape,
    /// z_c; `None` means 4n.
    pub cutoff_scale: Option<f64>,
    pub cutoff_power: f64,
    pub grid_r: AxisSpec,
    pub grid_costheta: AxisSpec,
    pub method: MethodSelector,
    pub precision: Precision,
    pub out: PathBuf,
    /// Normalization radius of difference fields.
    pub r_ref: f64,
}

impl RunConfig {
    /// n = 10.5, m = 1, l = 3, δ = 1.3 on r ∈ [10, 26.5].
    pub fn figure1() -> Self {
        RunConfig {
            n: 10.5,
            m: 1,
            field: FieldInput::Delta(1.3),
            l: 3,
            l_top: None,
            k_max: None,
            cutoff_shape: CutoffShape::ExponentialPower,
            cutoff_scale: None,
            cutoff_power: DEFAULT_POWER,
            grid_r: AxisSpec { lo: 10.0, hi: 26.5, count: 101 },
            grid_costheta: AxisSpec { lo: -0.95, hi: 0.95, count: 81 },
            method: MethodSelector::Both,
            precision: Precision::Standard,
            out: PathBuf::from("out"),
            r_ref: 30.0,
        }
    }

    /// n = 28.5 with the other figure-1 values, r ∈ [10, 80], r_ref = 40.
    pub fn figure2() -> Self {
        RunConfig {
            n: 28.5,
            grid_r: AxisSpec { lo: 10.0, hi: 80.0, count: 101 },
            r_ref: 40.0,
            ..Self::figure1()
        }
    }

    pub fn context(&self) -> Result<QuantumContext> {
        match self.field {
            FieldInput::Field(f) => QuantumContext::from_field(self.n, self.m, f),
            FieldInput::Delta(d) => QuantumContext::from_delta(self.n, self.m, d),
        }
    }

    pub fn cutoff(&self) -> Result<CutoffSpec> {
        let scale = self.cutoff_scale.unwrap_or(DEFAULT_SCALE_OVER_N * self.n);
        CutoffSpec::new(self.cutoff_shape, scale, self.cutoff_power)
    }

    pub fn grid(&self) -> Result<FieldGrid> {
        let (r, c) = (self.grid_r, self.grid_costheta);
        FieldGrid::uniform((r.lo, r.hi, r.count), (c.lo, c.hi, c.count))
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let ctx = self.context()?;
        if self.l < self.m {
            return Err(Error::Config(format!("l = {} below m = {}", self.l, self.m)));
        }
        if let Some(t) = self.l_top {
            if t < self.l {
                return Err(Error::Config(format!("lmax = {t} below l = {}", self.l)));
            }
        }
        if self.k_max == Some(0) {
            return Err(Error::Config("kmax must be positive".into()));
        }
        if !(self.r_ref > 0.0) || self.r_ref > ctx.r_max() {
            return Err(Error::Config(format!("r_ref = {} out of range", self.r_ref)));
        }
        self.cutoff()?;
        self.grid()?;
        Ok(())
    }

    /// `key=value` pairs: the inputs, then the derived F, δ and z_c.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, val: String| v.push((k.to_string(), val));
        put("n", self.n.to_string());
        put("m", self.m.to_string());
        match self.field {
            FieldInput::Field(f) => put("input", format!("F={f}")),
            FieldInput::Delta(d) => put("input", format!("delta={d}")),
        }
        put("l", self.l.to_string());
        put("lmax", opt(self.l_top));
        put("kmax", opt(self.k_max));
        put("cutoff_shape", self.cutoff_shape.to_string());
        put("cutoff_scale", opt(self.cutoff_scale));
        put("cutoff_power", self.cutoff_power.to_string());
        put("grid_r", self.grid_r.to_string());
        put("grid_costheta", self.grid_costheta.to_string());
        put("method", self.method.to_string());
        put("precision", self.precision.to_string());
        put("out", self.out.display().to_string());
        put("r_ref", self.r_ref.to_string());
        if let Ok(ctx) = self.context() {
            put("F", format!("{:.6e}", ctx.field));
            put("delta", format!("{:.6e}", ctx.delta));
        }
        if let Ok(c) = self.cutoff() {
            put("z_c", c.scale.to_string());
        }
        v
    }

    pub fn render(&self) -> String {
        self.header()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    /// Inverse of [`RunConfig::render`]; also accepts `# ` prefixed lines.
    /// Derived keys (F, delta, z_c) are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = RunConfig::figure1();
        let mut seen_input = false;
        for line in text.lines() {
            let line = line.trim().trim_start_matches('#').trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line '{line}' is not key=value")))?;
            let num = |v: &str| -> Result<f64> {
                v.parse().map_err(|_| Error::Config(format!("{k}: '{v}' is not a number")))
            };
            let int = |v: &str| -> Result<usize> {
                v.parse().map_err(|_| Error::Config(format!("{k}: '{v}' is not an integer")))
            };
            match k {
                "n" => c.n = num(v)?,
                "m" => c.m = int(v)?,
                "input" => {
                    seen_input = true;
                    c.field = match v.split_once('=') {
                        Some(("F", x)) => FieldInput::Field(num(x)?),
                        Some(("delta", x)) => FieldInput::Delta(num(x)?),
                        _ => return Err(Error::Config(format!("input: '{v}'"))),
                    };
                }
                "l" => c.l = int(v)?,
                "lmax" => c.l_top = parse_opt(v, int)?,
                "kmax" => c.k_max = parse_opt(v, int)?,
                "cutoff_shape" => c.cutoff_shape = v.parse()?,
                "cutoff_scale" => c.cutoff_scale = parse_opt(v, num)?,
                "cutoff_power" => c.cutoff_power = num(v)?,
                "grid_r" => c.grid_r = v.parse()?,
                "grid_costheta" => c.grid_costheta = v.parse()?,
                "method" => c.method = v.parse()?,
                "precision" => c.precision = v.parse()?,
                "out" => c.out = PathBuf::from(v),
                "r_ref" => c.r_ref = num(v)?,
                "F" | "delta" | "z_c" => {}
                _ => {}
            }
        }
        if !seen_input {
            return Err(Error::Config("missing input=F=… or input=delta=…".into()));
        }
        Ok(c)
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "auto".into())
}

fn parse_opt<T>(v: &str, f: impl Fn(&str) -> Result<T>) -> Result<Option<T>> {
    if v == "auto" {
        Ok(None)
    } else {
        f(v).map(Some)
    }
}
