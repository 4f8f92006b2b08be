//! Command-line driver: `channels`, `gamma`, `figure` and `verify`.
//!
//! Exit codes: 0 success, 1 configuration, 2 non-convergence or numerical
//! failure, 3 plateau failure, 4 oracle failure.

mod config;
pub mod oracles;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{AxisSpec, FieldInput, MethodSelector, Precision, RunConfig};

use crate::error::{Error, Result};
use crate::matching::{
    default_field_weight, field_table, frobenius_deviation, gamma_matrices, nearest_column,
    plateau_scan, reference_scale, reproduce_figure, required_nu, solve_channels_to,
    FigureResult, FigureSpec, GammaMatrix, SCAN_SPAN, SLICE_COSTHETA,
};
use crate::stark::{channel_match_c, default_window, solve_channels};
use crate::table::Table;

#[derive(Parser, Debug)]
#[command(name = "stark-lft", version, about = "Local frame transformation for the hydrogenic Stark effect")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the ξ channels and write k, β, ν, μ, c.
    Channels(Flags),
    /// Build γ by one or both methods and run the plateau scan.
    Gamma(Flags),
    /// Reproduce figure 1 or 2: fields, differences and statistics.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the oracle suite.
    Verify(Flags),
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Field strength in atomic units.
    #[arg(long = "F", allow_hyphen_values = true)]
    pub field: Option<f64>,
    /// δ = 16 F n⁴
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Largest l′ of the regular correction (default: m+12 with a convergence check).
    #[arg(long)]
    pub lmax: Option<usize>,
    #[arg(long)]
    pub kmax: Option<usize>,
    /// gaussian | exponential-power | sharp
    #[arg(long = "cutoff-shape", allow_hyphen_values = true)]
    pub cutoff_shape: Option<String>,
    /// z_c (default 4n).
    #[arg(long = "cutoff-scale", allow_hyphen_values = true)]
    pub cutoff_scale: Option<f64>,
    #[arg(long = "cutoff-power", allow_hyphen_values = true)]
    pub cutoff_power: Option<f64>,
    /// lo:hi:count
    #[arg(long = "grid-r", allow_hyphen_values = true)]
    pub grid_r: Option<String>,
    /// lo:hi:count
    #[arg(long = "grid-costheta", allow_hyphen_values = true)]
    pub grid_costheta: Option<String>,
    /// uom | glft | both
    #[arg(long)]
    pub method: Option<String>,
    /// standard | extended
    #[arg(long)]
    pub precision: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub out: Option<PathBuf>,
}

impl Flags {
    /// Flags applied over a preset.
    pub fn resolve(&self, preset: RunConfig) -> Result<RunConfig> {
        let mut c = preset;
        if let Some(v) = self.n {
            c.n = v;
        }
        if let Some(v) = self.m {
            c.m = v;
        }
        match (self.field, self.delta) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either --F or --delta, not both".into()))
            }
            (Some(f), None) => c.field = FieldInput::Field(f),
            (None, Some(d)) => c.field = FieldInput::Delta(d),
            (None, None) => {}
        }
        if let Some(v) = self.l {
            c.l = v;
        }
        if self.lmax.is_some() {
            c.l_top = self.lmax;
        }
        if self.kmax.is_some() {
            c.k_max = self.kmax;
        }
        if let Some(v) = &self.cutoff_shape {
            c.cutoff_shape = v.parse()?;
        }
        if self.cutoff_scale.is_some() {
            c.cutoff_scale = self.cutoff_scale;
        }
        if let Some(v) = self.cutoff_power {
            c.cutoff_power = v;
        }
        if let Some(v) = &self.grid_r {
            c.grid_r = v.parse()?;
        }
        if let Some(v) = &self.grid_costheta {
            c.grid_costheta = v.parse()?;
        }
        if let Some(v) = &self.method {
            c.method = v.parse()?;
        }
        if let Some(v) = &self.precision {
            c.precision = v.parse()?;
        }
        if let Some(v) = &self.out {
            c.out = v.clone();
        }
        c.validate()?;
        Ok(c)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Region(_) | Error::Io(_) => 1,
        Error::Plateau(_) => 3,
        Error::Oracle(_) => 4,
        _ => 2,
    }
}

/// Parses `args` and runs; returns the process exit code. Usage errors map to 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                1
            } else {
                0
            }
        }
    }
}

/// Runs one command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Channels(f) => f.resolve(RunConfig::figure1()).and_then(|c| cmd_channels(&c)),
        Command::Gamma(f) => f.resolve(RunConfig::figure1()).and_then(|c| cmd_gamma(&c)),
        Command::Figure { which, flags } => {
            let preset = if which == 1 { RunConfig::figure1() } else { RunConfig::figure2() };
            flags.resolve(preset).and_then(|c| cmd_figure(&c, which))
        }
        Command::Verify(f) => f.resolve(RunConfig::figure1()).and_then(|c| cmd_verify(&c)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn with_header(mut t: Table, cfg: &RunConfig, extra: &[(String, String)]) -> Table {
    let mut h = cfg.header();
    h.extend(extra.iter().cloned());
    h.append(&mut t.header);
    t.header = h;
    t
}

fn write_out(cfg: &RunConfig, name: &str, t: &Table) -> Result<PathBuf> {
    fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join(name);
    t.write(&path)?;
    Ok(path)
}

fn write_summary(path: &Path, cfg: &RunConfig, lines: &[(String, String)]) -> Result<()> {
    let mut s = cfg.render();
    for (k, v) in lines {
        s.push_str(&format!("{k}={v}\n"));
    }
    fs::write(path, s)?;
    Ok(())
}

pub const DEFAULT_KMAX: usize = 40;

pub fn cmd_channels(cfg: &RunConfig) -> Result<()> {
    let ctx = cfg.context()?;
    let k = cfg.k_max.unwrap_or(DEFAULT_KMAX);
    let table = solve_channels(&ctx, k)?;
    let window = default_window(&ctx);
    let fits: Vec<f64> = (1..=k)
        .map(|kk| channel_match_c(&table, kk, window).map(|f| f.residual))
        .collect::<Result<_>>()?;
    let t = with_header(
        table.to_table(Some(&fits)),
        cfg,
        &[
            ("basis_size".into(), table.basis_size.to_string()),
            ("fit_window".into(), format!("{}:{}", window.0, window.1)),
        ],
    );
    let path = write_out(cfg, "channels.csv", &t)?;
    println!("channels={} file={}", k, path.display());
    Ok(())
}

fn gamma_file(cfg: &RunConfig, g: &GammaMatrix, extra: &[(String, String)]) -> Result<PathBuf> {
    let mut meta = vec![
        ("gamma_method".to_string(), g.method.to_string()),
        ("gamma_cutoff".to_string(), g.cutoff.to_string()),
        ("gamma_l_top".to_string(), g.l_top.to_string()),
        ("channels_used".to_string(), g.channels_used.to_string()),
        ("n1_max".to_string(), g.n1_max.to_string()),
    ];
    meta.extend(extra.iter().cloned());
    let t = with_header(g.to_table(), cfg, &meta);
    write_out(cfg, &format!("gamma_{}.csv", g.method), &t)
}

pub fn cmd_gamma(cfg: &RunConfig) -> Result<()> {
    let ctx = cfg.context()?;
    let cutoff = cfg.cutoff()?;
    let l_top = cfg.l_top.unwrap_or(ctx.m + 12).max(ctx.m + SCAN_SPAN);
    let table = match cfg.k_max {
        Some(k) => solve_channels(&ctx, k)?,
        None => solve_channels_to(&ctx, required_nu(&ctx, &cutoff, l_top))?,
    };
    let pair = gamma_matrices(&ctx, &table, l_top, &cutoff)?;
    let scan = plateau_scan(&ctx, &cutoff, &pair)?;
    let l_hi = ctx.m + SCAN_SPAN;
    let eq = frobenius_deviation(&pair.0.block(l_hi), &pair.1.block(l_hi));
    let mut extra = scan.summary_lines();
    extra.push(("equivalence_frobenius".into(), format!("{eq:.6e}")));
    let (gu, gg) = &pair;
    let selected: Vec<&GammaMatrix> = match cfg.method {
        MethodSelector::Uom => vec![gu],
        MethodSelector::Glft => vec![gg],
        MethodSelector::Both => vec![gu, gg],
    };
    for g in selected {
        let p = gamma_file(cfg, g, &extra)?;
        println!("gamma method={} file={}", g.method, p.display());
    }
    for (k, v) in scan.summary_lines() {
        println!("{k}={v}");
    }
    if cfg.method == MethodSelector::Both {
        println!("equivalence frobenius={eq:.6e} block=l,l'<={l_hi}");
    }
    scan.check()
}

/// [`FigureSpec`] from a resolved configuration.
pub fn figure_spec(cfg: &RunConfig) -> Result<FigureSpec> {
    let ctx = cfg.context()?;
    let cutoff = cfg.cutoff()?;
    Ok(FigureSpec {
        ctx,
        l: cfg.l,
        r_ref: cfg.r_ref,
        grid: cfg.grid()?,
        field_weight: default_field_weight(&ctx, &cutoff),
        field_tol: cfg.precision.field_weight_tol(),
        cutoff,
        l_top: cfg.l_top,
    })
}

/// Summary lines of a figure run.
pub fn figure_summary(r: &FigureResult) -> Vec<(String, String)> {
    let mut v = vec![
        ("channels".to_string(), r.table.len().to_string()),
        ("l_top".to_string(), r.l_top.to_string()),
        ("l_top_converged".to_string(), r.l_top_converged.to_string()),
    ];
    for (t, s) in &r.l_top_history {
        v.push((format!("l_top_check[{t}]"), format!("{s:.6e}")));
    }
    v.extend(r.uom.stats.summary_lines("uom"));
    v.extend(r.glft.stats.summary_lines("glft"));
    v.push(("equivalence_frobenius".into(), format!("{:.6e}", r.equivalence)));
    v.push(("mutual_sup".into(), format!("{:.6e}", r.mutual_sup)));
    v.extend(r.plateau.summary_lines());
    v
}

pub fn cmd_figure(cfg: &RunConfig, which: u8) -> Result<()> {
    let spec = figure_spec(cfg)?;
    let r = reproduce_figure(&spec)?;
    let summary = figure_summary(&r);
    let grid = &spec.grid;
    let fields = field_table(
        grid,
        &[
            ("exact", &r.uom.field.exact),
            ("matched_uom", &r.uom.field.matched),
            ("matched_glft", &r.glft.field.matched),
            ("diff_uom", &r.uom.normalized),
            ("diff_glft", &r.glft.normalized),
        ],
    );
    let scale = reference_scale(&spec.ctx, spec.l, spec.r_ref)?;
    let fields = with_header(fields, cfg, &[("normalization".into(), format!("{scale:.12e}"))]);
    write_out(cfg, &format!("figure{which}_fields.csv"), &fields)?;

    let nc = grid.costheta_values.len();
    let mut slices = Table::new(["costheta", "r", "exact", "matched_uom", "matched_glft", "diff_uom", "diff_glft"]);
    for c in SLICE_COSTHETA {
        let j = nearest_column(grid, c);
        for i in 0..grid.r_values.len() {
            let idx = i * nc + j;
            slices.push(vec![
                grid.costheta_values[j],
                grid.r_values[i],
                r.uom.field.exact[idx],
                r.uom.field.matched[idx],
                r.glft.field.matched[idx],
                r.uom.normalized[idx],
                r.glft.normalized[idx],
            ]);
        }
    }
    let slices = with_header(slices, cfg, &[]);
    write_out(cfg, &format!("figure{which}_slices.csv"), &slices)?;

    let (gu, gg) = (&r.uom.gamma, &r.glft.gamma);
    gamma_file(cfg, gu, &[])?;
    gamma_file(cfg, gg, &[])?;

    fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join(format!("figure{which}_summary.txt"));
    write_summary(&path, cfg, &summary)?;
    for (k, v) in &summary {
        println!("{k}={v}");
    }
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<()> {
    let results = oracles::run_suite(cfg.n, cfg.m)?;
    let lines: Vec<(String, String)> = results
        .iter()
        .map(|r| {
            println!("{}", r.line());
            (format!("oracle.{}", r.name), r.line())
        })
        .collect();
    fs::create_dir_all(&cfg.out)?;
    write_summary(&cfg.out.join("verify.txt"), cfg, &lines)?;
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        println!("verify status=pass");
        Ok(())
    } else {
        Err(Error::Oracle(format!("failed: {}", failed.join(", "))))
    }
}
