//! The `octapet` command line.
//!
//! * `tiling` computes `Δ_s` at a rational parameter, prints coverage
//!   statistics and optionally writes JSON and SVG.
//! * `verify` runs the partition check or one of the eight calculations.
//! * `renorm` prints the renormalization trace of a parameter.
//! * `derive-partition` rebuilds part of the bundle partition from the
//!   planar maps and diffs it against the shipped fixtures.
//!
//! Exit codes: [`EXIT_PASS`], [`EXIT_FAIL`] for a failed verification or
//! an incomplete tiling, [`EXIT_USAGE`] for bad input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use bundle::{derivation_mismatches, derive_partition, Bundle, BundleError, Fixtures, GridDensity, SCALE};
use calculations::CalcError;
use clap::{Parser, Subcommand, ValueEnum};
use pet_core::{PetSystem, Rational};
use renorm::RenormError;
use serde_json::json;
use thiserror::Error;
use tiling::{compute_tiling_with, coverage_stats, render_svg, ColorScheme, RenderOptions, TilingError, TilingOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Renorm(#[from] RenormError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "octapet",
    version,
    about = "Periodic tilings, renormalization and bundle verification for the octagonal PET family"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the periodic tiling at a rational parameter.
    Tiling(TilingArgs),
    /// Run a verification: `partition`, `calc1` … `calc8`, or `all`.
    Verify(VerifyArgs),
    /// Print the renormalization trace of a parameter in (0, 1).
    Renorm(RenormArgs),
    /// Rebuild the partition over a parameter interval and diff it against the fixtures.
    DerivePartition(DeriveArgs),
}

#[derive(Debug, clap::Args)]
pub struct TilingArgs {
    /// The parameter, as `p/q`.
    #[arg(long = "s", value_parser = parse_rational)]
    pub s: Rational,
    /// Initial seed cells per side of the bounding box.
    #[arg(long, default_value_t = 4)]
    pub grid: usize,
    /// Stop after this many seed orbits; the tiling may then be incomplete.
    #[arg(long, default_value_t = 200_000)]
    pub seed_budget: usize,
    /// Write an SVG picture here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the exact tiling and coverage statistics here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Coloring::Period)]
    pub color: Coloring,
    /// SVG stroke width, in units of the plane.
    #[arg(long, default_value_t = 0.002)]
    pub stroke_width: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coloring {
    Period,
    Shape,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_target)]
    pub target: Target,
    /// Directory holding `alist.json`, `blist_printed.json`,
    /// `auxiliary.json` and `map_vectors.json`; defaults to the built-in set.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Partition,
    Calc(u8),
    All,
}

#[derive(Debug, clap::Args)]
pub struct RenormArgs {
    #[arg(long = "s", value_parser = parse_rational)]
    pub s: Rational,
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
}

#[derive(Debug, clap::Args)]
pub struct DeriveArgs {
    /// Parameter interval such as `[1/4,1/2]`, inside `[1/4, 2]`.
    pub interval: String,
    /// Sample spacing in the plane, in units of 1/420; the vertical
    /// spacing is a quarter of it.
    #[arg(long, default_value_t = 20)]
    pub grid: i64,
    /// Write `pieces.json`, `derivation.json` and `diff.json` here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse::<Rational>().map_err(|e| format!("expected a rational p/q: {e}"))
}

fn parse_target(text: &str) -> Result<Target, String> {
    match text {
        "partition" => Ok(Target::Partition),
        "all" => Ok(Target::All),
        _ => text
            .strip_prefix("calc")
            .and_then(|n| n.parse::<u8>().ok())
            .filter(|n| (1..=8).contains(n))
            .map(Target::Calc)
            .ok_or_else(|| "expected partition, calc1 … calc8 or all".to_string()),
    }
}

/// Parses `[lo,hi]` (brackets optional) into a subinterval of `[1/4, 2]`
/// with endpoints on the 1/420 grid.
pub fn parse_interval(text: &str) -> Result<(Rational, Rational), CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad interval {text:?}: {why}"));
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = inner.split_once(',').ok_or_else(|| bad("expected [lo,hi]"))?;
    let lo: Rational = a.trim().parse().map_err(|_| bad("lower end is not a rational"))?;
    let hi: Rational = b.trim().parse().map_err(|_| bad("upper end is not a rational"))?;
    if lo >= hi {
        return Err(bad("lower end must be below upper end"));
    }
    if lo < Rational::frac(1, 4) || hi > Rational::from_int(2) {
        return Err(bad("must lie within [1/4, 2]"));
    }
    let scale = Rational::from_int(SCALE);
    if !(&lo * &scale).is_integer() || !(&hi * &scale).is_integer() {
        return Err(bad("endpoints must be multiples of 1/420"));
    }
    Ok((lo, hi))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Machine-readable output goes to `out`, summaries and errors
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command; `Ok(false)` means it ran but did not pass.
pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Tiling(a) => cmd_tiling(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Renorm(a) => cmd_renorm(a, out),
        Command::DerivePartition(a) => cmd_derive_partition(a, out, err),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    Ok(text)
}

pub fn cmd_tiling(a: &TilingArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    if a.s.signum() <= 0 {
        return Err(CliError::Usage(format!("--s must be positive, got {}", a.s)));
    }
    if a.grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    if !(a.stroke_width.is_finite() && a.stroke_width > 0.0) {
        return Err(CliError::Usage("--stroke-width must be positive".into()));
    }
    let sys = PetSystem::new(a.s.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = TilingOptions { seed_budget: a.seed_budget, ..TilingOptions::new(a.grid) };
    let t = compute_tiling_with(&sys, &opts)?;
    let stats = coverage_stats(&t)?;
    writeln!(out, "s = {}", t.s)?;
    writeln!(out, "tiles = {}", t.tiles.len())?;
    writeln!(
        out,
        "covered area = {} of {} ({})",
        t.covered_area,
        &t.s * &Rational::from_int(4),
        if t.complete { "complete" } else { "incomplete" }
    )?;
    writeln!(out, "seeds = {}", t.seeds_used)?;
    writeln!(out, "lambda_area = {}", stats.lambda_area)?;
    writeln!(out, "lambda_left_edge = {}", stats.lambda_left_edge)?;
    writeln!(out, "lambda_bottom_edge = {}", stats.lambda_bottom_edge)?;
    if let Some(path) = &a.json {
        write_file(path, &pretty(&json!({ "tiling": t, "coverage": stats }))?)?;
    }
    if let Some(path) = &a.svg {
        let color = match a.color {
            Coloring::Period => ColorScheme::ByPeriod,
            Coloring::Shape => ColorScheme::ByShape,
        };
        let opts = RenderOptions { color, stroke_width: a.stroke_width, ..RenderOptions::default() };
        write_file(path, &render_svg(&t, &opts))?;
    }
    Ok(t.complete)
}

const FIXTURE_FILES: [&str; 4] = ["alist.json", "blist_printed.json", "auxiliary.json", "map_vectors.json"];

/// Builds the bundle from a fixture directory. Missing files are a usage
/// error; fixtures that are present but wrong are a verification failure.
fn load_bundle(dir: &Path) -> Result<Bundle, CliError> {
    for f in FIXTURE_FILES {
        if !dir.join(f).is_file() {
            return Err(CliError::Usage(format!("fixture file {} not found", dir.join(f).display())));
        }
    }
    Ok(Bundle::build(Fixtures::load(Some(dir))?)?)
}

fn with_bundle<R>(dir: Option<&Path>, f: impl FnOnce(&Bundle) -> Result<R, CliError>) -> Result<R, CliError> {
    match dir {
        Some(d) => f(&load_bundle(d)?),
        None => f(Bundle::standard()),
    }
}

fn summary(err: &mut dyn Write, name: &str, failed: &[&str]) -> io::Result<()> {
    if failed.is_empty() {
        writeln!(err, "{name}: PASS")
    } else {
        writeln!(err, "{name}: FAIL ({})", failed.join(", "))
    }
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    with_bundle(a.fixtures.as_deref(), |b| {
        let (value, passed) = match a.target {
            Target::Partition => {
                let r = bundle::verify_partition(&b.systems())?;
                summary(err, "partition", &r.failed_checks())?;
                (serde_json::to_value(&r)?, r.passed())
            }
            Target::Calc(id) => {
                let r = calculations::run(b, id)?;
                summary(err, &format!("calc{id}"), &r.failed_checks())?;
                (serde_json::to_value(&r)?, r.passed())
            }
            Target::All => {
                let p = bundle::verify_partition(&b.systems())?;
                summary(err, "partition", &p.failed_checks())?;
                let calcs = calculations::run_all(b)?;
                for c in &calcs {
                    summary(err, &format!("calc{}", c.id), &c.failed_checks())?;
                }
                let passed = p.passed() && calcs.iter().all(|c| c.passed());
                (json!({ "passed": passed, "partition": p, "calculations": calcs }), passed)
            }
        };
        out.write_all(pretty(&value)?.as_bytes())?;
        Ok(passed)
    })
}

pub fn cmd_renorm(a: &RenormArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    if a.s.signum() <= 0 || a.s >= Rational::one() {
        return Err(CliError::Usage(format!("--s must lie in (0, 1), got {}", a.s)));
    }
    let trace = renorm::renorm_trace(&a.s, a.depth)?;
    out.write_all(pretty(&trace)?.as_bytes())?;
    Ok(true)
}

pub fn cmd_derive_partition(a: &DeriveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    let (lo, hi) = parse_interval(&a.interval)?;
    if a.grid <= 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    let scaled = |r: &Rational| (r * &Rational::from_int(SCALE)).to_i64().expect("checked by parse_interval");
    let (z0, z1) = (scaled(&lo), scaled(&hi));
    let grid = GridDensity { xy_step: a.grid, z_step: (a.grid / 4).max(1) };
    let d = derive_partition(z0, z1, grid)?;
    with_bundle(a.fixtures.as_deref(), |b| {
        let shipped = b.systems().into_iter().zip(["alpha", "beta", "gamma"]).find(|(s, _)| s.z_range == (z0, z1));
        let (compared_with, mismatches) = match shipped {
            Some((sys, name)) => (Some(name), derivation_mismatches(sys, &d)),
            None => (None, Vec::new()),
        };
        // The printed B list is known not to describe the partition; its
        // diff is reported for the record and never fails the command.
        let printed_b = (compared_with == Some("beta"))
            .then(|| b.fixtures.diff_printed_b(&d.pieces.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>()));
        let report = json!({
            "interval": [lo, hi],
            "z_range": d.z_range,
            "grid": d.grid,
            "samples": d.samples,
            "pieces": d.pieces.len(),
            "volume6": d.volume6,
            "target_volume6": d.target_volume6,
            "compared_with": compared_with,
            "mismatches": mismatches,
            "printed_b_diff": printed_b,
        });
        match compared_with {
            Some(name) => summary(
                err,
                &format!("derive [{lo}, {hi}] vs {name}"),
                &mismatches.iter().map(String::as_str).collect::<Vec<_>>(),
            )?,
            None => writeln!(err, "derive [{lo}, {hi}]: {} pieces, no shipped fixtures to compare", d.pieces.len())?,
        }
        if let Some(dir) = &a.out {
            fs::create_dir_all(dir)?;
            let polys: Vec<_> = d.pieces.iter().map(|(_, p)| p).collect();
            write_file(&dir.join("pieces.json"), &pretty(&polys)?)?;
            write_file(&dir.join("derivation.json"), &pretty(&d)?)?;
            write_file(&dir.join("diff.json"), &pretty(&report)?)?;
        }
        out.write_all(pretty(&report)?.as_bytes())?;
        Ok(mismatches.is_empty())
    })
}
