use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use stark_lft::cli::{AxisSpec, FieldInput, MethodSelector, Precision, RunConfig};
use stark_lft::matching::CutoffShape;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stark-lft"))
}

fn read(p: PathBuf) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn channels_writes_kmax_rows_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["channels", "--n", "10.5", "--m", "1", "--delta", "1.3", "--kmax", "40", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = read(dir.path().join("channels.csv"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "k,beta,nu,mu,c,fit_residual");
    assert_eq!(rows.len(), 41);
    assert!(text.contains("# F=6.684458e-6"));
    for r in &rows[1..] {
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells.len(), 6);
        assert_eq!(cells[2].split('e').next().unwrap().replace(['-', '.'], "").len(), 12);
    }
    let cfg = RunConfig::parse(&text.lines().filter(|l| l.starts_with('#')).collect::<Vec<_>>().join("\n")).unwrap();
    assert_eq!(cfg.k_max, Some(40));
    assert_eq!(cfg.field, FieldInput::Delta(1.3));
}

#[test]
fn both_field_flags_is_a_config_error() {
    let out = bin().args(["channels", "--F", "1e-6", "--delta", "1.3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_values_are_config_errors() {
    for args in [
        vec!["channels", "--cutoff-shape", "boxcar"],
        vec!["channels", "--grid-r", "1:2"],
        vec!["channels", "--l", "0", "--m", "1"],
        vec!["gamma", "--method", "neither"],
        vec!["channels", "--n", "-3"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn figure_grid_outside_region_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["figure", "1", "--grid-r", "10:60:5", "--grid-costheta", "-0.5:0.5:3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gamma_both_writes_two_files_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["gamma", "--method", "both", "--lmax", "8", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("equivalence frobenius="));
    assert!(stdout.contains("plateau.kmax_x2="));
    for f in ["gamma_uom.csv", "gamma_glft.csv"] {
        let text = read(dir.path().join(f));
        assert!(text.contains("# plateau.zc_x1.25="));
        assert!(text.contains("# n=10.5"));
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, 1 + 8 * 8);
    }
}

#[test]
fn verify_passes_and_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["verify", "--out"]).arg(dir.path()).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.lines().filter(|l| l.starts_with("oracle=")).all(|l| l.contains("status=pass")));
    assert!(stdout.contains("measured="));
    assert!(read(dir.path().join("verify.txt")).contains("oracle.kummer_wronskian="));
}

fn axis() -> impl Strategy<Value = AxisSpec> {
    (-50.0f64..50.0, 0.0f64..50.0, 1usize..500).prop_map(|(lo, w, count)| AxisSpec { lo, hi: lo + w, count })
}

fn config() -> impl Strategy<Value = RunConfig> {
    (
        (0.6f64..80.0, 0usize..6, prop::bool::ANY, 1e-9f64..2.0, 0usize..8),
        (prop::option::of(0usize..60), prop::option::of(1usize..400)),
        (
            prop_oneof![Just(CutoffShape::Gaussian), Just(CutoffShape::ExponentialPower), Just(CutoffShape::Sharp)],
            prop::option::of(0.1f64..500.0),
            1.5f64..20.0,
        ),
        (axis(), axis()),
        (
            prop_oneof![Just(MethodSelector::Uom), Just(MethodSelector::Glft), Just(MethodSelector::Both)],
            prop_oneof![Just(Precision::Standard), Just(Precision::Extended)],
            "[a-z0-9_/]{1,12}",
            0.5f64..100.0,
        ),
    )
        .prop_map(|((n, m, use_f, x, dl), (lt, k), (shape, scale, p), (gr, gc), (method, precision, out, r_ref))| RunConfig {
            n,
            m,
            field: if use_f { FieldInput::Field(x) } else { FieldInput::Delta(x) },
            l: m + dl,
            l_top: lt,
            k_max: k,
            cutoff_shape: shape,
            cutoff_scale: scale,
            cutoff_power: p,
            grid_r: gr,
            grid_costheta: gc,
            method,
            precision,
            out: PathBuf::from(out),
            r_ref,
        })
}

proptest! {
    #[test]
    fn config_round_trip(c in config()) {
        prop_assert_eq!(RunConfig::parse(&c.render()).unwrap(), c.clone());
        let commented: String = c.render().lines().map(|l| format!("# {l}\n")).collect();
        prop_assert_eq!(RunConfig::parse(&commented).unwrap(), c);
    }
}

#[test]
fn presets_validate() {
    RunConfig::figure1().validate().unwrap();
    RunConfig::figure2().validate().unwrap();
    assert!(RunConfig::parse("n=3\n").is_err());
}
