//! Command-line front end: flag parsing, recipe expansion and output.
//!
//! Exit codes: 0 success, 2 usage or validation failure, 3 numerical
//! failure, 1 I/O failure.

pub mod output;
pub mod recipes;

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use squeezed_qfi::sweep::TableMetadata;
use squeezed_qfi::sweep::{linspace, optimal_time_with, TimeSearch};
use squeezed_qfi::{
    density_grid, qfi_point, sweep, Axis, BathPoint, Error, Estimand, FixedInputs, GridSpec, OptimalTimeResult,
    ProbeInit, QuadratureConfig, SpectralParams, SqueezeParams, SweepSpec,
};

use crate::recipes::{Preset, RecipeKind};

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variables consulted when the tolerance flags are absent.
pub const ENV_REL_TOL: &str = "SQUEEZED_QFI_REL_TOL";
pub const ENV_ABS_TOL: &str = "SQUEEZED_QFI_ABS_TOL";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl std::error::Error for CliError {}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn flag_error(flag: &str, e: Error) -> CliError {
    CliError::Usage(format!("invalid --{flag}: {e}"))
}

fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("missing required flag --{flag}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    Ok((lo, hi))
}

fn parse_estimand(s: &str) -> Result<Estimand, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "squeezed-qfi",
    version,
    about = "QFI of a dephasing qubit in a squeezed thermal bath"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the QFI at a single point.
    Point(PointArgs),
    /// Sweep one input over a range.
    Sweep(SweepArgs),
    /// Evaluate a (T, t) density grid.
    Grid(GridArgs),
    /// Optimal interaction time as a function of temperature.
    #[command(name = "opt-time")]
    OptTime(OptTimeArgs),
    /// List the figure recipes.
    Recipes,
}

#[derive(Debug, Clone, Args)]
pub struct BathArgs {
    /// Estimand: T, r or theta.
    #[arg(long, value_parser = parse_estimand)]
    pub estimand: Option<Estimand>,
    /// Bath temperature (units of the cutoff).
    #[arg(long, allow_negative_numbers = true)]
    pub temp: Option<f64>,
    /// Interaction time (units of the inverse cutoff).
    #[arg(long, allow_negative_numbers = true)]
    pub time: Option<f64>,
    /// Squeezing amplitude.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Squeezing phase in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Ohmicity exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    /// Cutoff frequency.
    #[arg(long = "omega-c", allow_negative_numbers = true)]
    pub omega_c: Option<f64>,
    /// Initial-state angle in radians (default π/2).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Qubit frequency; accepted for completeness, pure dephasing does not depend on it.
    #[arg(long = "omega-0")]
    pub omega_0: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long = "rel-tol", env = ENV_REL_TOL)]
    pub rel_tol: Option<f64>,
    #[arg(long = "abs-tol", env = ENV_ABS_TOL)]
    pub abs_tol: Option<f64>,
    #[arg(long = "max-subdivisions")]
    pub max_subdivisions: Option<usize>,
    #[arg(long = "omega-max-factor")]
    pub omega_max_factor: Option<f64>,
}

impl QuadArgs {
    pub fn config(&self) -> Result<QuadratureConfig, CliError> {
        let d = QuadratureConfig::default();
        let qc = QuadratureConfig {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(d.max_subdivisions),
            omega_max_factor: self.omega_max_factor.unwrap_or(d.omega_max_factor),
        };
        qc.validate()
            .map_err(|e| CliError::Usage(format!("invalid quadrature flags: {e}")))?;
        Ok(qc)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub bath: BathArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Preset flags for a figure panel, e.g. fig1a.
    #[arg(long)]
    pub recipe: Option<String>,
    /// Swept input: T, t, r, theta or alpha.
    #[arg(long, value_parser = parse_axis)]
    pub axis: Option<Axis>,
    /// Axis range as lo:hi.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub bath: BathArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub recipe: Option<String>,
    #[arg(long = "t-range", value_parser = parse_range, allow_hyphen_values = true)]
    pub t_range: Option<(f64, f64)>,
    #[arg(long = "T-range", value_parser = parse_range, allow_hyphen_values = true)]
    pub temp_range: Option<(f64, f64)>,
    #[arg(long = "t-points")]
    pub t_points: Option<usize>,
    #[arg(long = "T-points")]
    pub temp_points: Option<usize>,
    #[command(flatten)]
    pub bath: BathArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OptTimeArgs {
    #[arg(long)]
    pub recipe: Option<String>,
    #[arg(long = "T-range", value_parser = parse_range, allow_hyphen_values = true)]
    pub temp_range: Option<(f64, f64)>,
    #[arg(long = "T-points")]
    pub temp_points: Option<usize>,
    /// Upper end of the time search range.
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Points in the coarse bracketing scan.
    #[arg(long = "coarse-points", default_value_t = 64)]
    pub coarse_points: usize,
    #[command(flatten)]
    pub bath: BathArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutArgs,
}

fn load_recipe(name: Option<&str>, kind: RecipeKind) -> Result<Preset, CliError> {
    let Some(name) = name else {
        return Ok(Preset::default());
    };
    let recipe =
        recipes::lookup(name).ok_or_else(|| CliError::Usage(format!("invalid --recipe: unknown recipe '{name}'")))?;
    if recipe.kind != kind {
        return Err(CliError::Usage(format!(
            "invalid --recipe: '{name}' belongs to the '{}' subcommand",
            recipe.kind.command()
        )));
    }
    Ok(recipe.preset)
}

/// Bath flags after merging explicit values over a recipe.
#[derive(Debug, Clone, Copy)]
struct Resolved {
    estimand: Option<Estimand>,
    temp: Option<f64>,
    time: Option<f64>,
    r: Option<f64>,
    theta: Option<f64>,
    s: Option<f64>,
    omega_c: f64,
    alpha: f64,
}

fn resolve(bath: &BathArgs, preset: &Preset) -> Resolved {
    Resolved {
        estimand: bath.estimand.or(preset.estimand),
        temp: bath.temp.or(preset.temp),
        time: bath.time.or(preset.time),
        r: bath.r.or(preset.r),
        theta: bath.theta.or(preset.theta),
        s: bath.s.or(preset.s),
        omega_c: bath.omega_c.unwrap_or(1.0),
        alpha: bath.alpha.unwrap_or(FRAC_PI_2),
    }
}

impl Resolved {
    fn estimand(&self) -> Result<Estimand, CliError> {
        self.estimand.ok_or_else(|| missing("estimand"))
    }

    /// Build the fixed inputs; `free` names inputs supplied elsewhere
    /// (swept or gridded) that get `placeholder` values here.
    fn fixed(&self, free: &[Axis], placeholder: (f64, f64)) -> Result<FixedInputs, CliError> {
        let is_free = |a: Axis| free.contains(&a);
        let temp = match self.temp {
            Some(v) => v,
            None if is_free(Axis::Temperature) => placeholder.0,
            None => return Err(missing("temp")),
        };
        let time = match self.time {
            Some(v) => v,
            None if is_free(Axis::Time) => placeholder.1,
            None => return Err(missing("time")),
        };
        let r = match self.r {
            Some(v) => v,
            None if is_free(Axis::SqueezeAmplitude) => 0.0,
            None => return Err(missing("r")),
        };
        // the phase has no effect without squeezing
        let theta = match self.theta {
            Some(v) => v,
            None if is_free(Axis::SqueezePhase) || (r == 0.0 && !is_free(Axis::SqueezeAmplitude)) => 0.0,
            None => return Err(missing("theta")),
        };
        let s = self.s.ok_or_else(|| missing("s"))?;

        let point = BathPoint::new(temp, time).map_err(|e| {
            if temp < 0.0 || !temp.is_finite() {
                flag_error("temp", e)
            } else {
                flag_error("time", e)
            }
        })?;
        let squeeze = SqueezeParams::new(r, theta).map_err(|e| {
            if r < 0.0 || !r.is_finite() {
                flag_error("r", e)
            } else {
                flag_error("theta", e)
            }
        })?;
        let spectral = SpectralParams::new(s, self.omega_c).map_err(|e| {
            if s > 0.0 && s.is_finite() {
                flag_error("omega-c", e)
            } else {
                flag_error("s", e)
            }
        })?;
        let probe = ProbeInit::new(self.alpha).map_err(|e| flag_error("alpha", e))?;
        Ok(FixedInputs {
            point,
            squeeze,
            spectral,
            probe,
        })
    }
}

fn timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn metadata(qc: &QuadratureConfig) -> TableMetadata {
    TableMetadata {
        timestamp: Some(timestamp()),
        ..TableMetadata::new(qc)
    }
}

/// Write `text` to the requested destination; a failed write leaves no file behind.
fn emit(out: &OutArgs, text: &str) -> Result<(), CliError> {
    if out.out == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        lock.write_all(text.as_bytes())
            .and_then(|_| lock.flush())
            .map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(());
    }
    if let Err(e) = fs::write(&out.out, text) {
        let _ = fs::remove_file(&out.out);
        return Err(CliError::Io(format!("writing {}: {e}", out.out)));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct PointSpec {
    estimand: Estimand,
    fixed: FixedInputs,
}

/// Render a point evaluation.
pub fn point_output(args: &PointArgs) -> Result<String, CliError> {
    let res = resolve(&args.bath, &Preset::default());
    let estimand = res.estimand()?;
    let fixed = res.fixed(&[], (0.0, 0.0))?;
    if estimand == Estimand::Temperature && fixed.point.temperature() == 0.0 {
        return Err(CliError::Usage(
            "invalid --temp: the T estimand requires --temp > 0".into(),
        ));
    }
    let qc = args.quad.config()?;
    let sample = qfi_point(
        estimand,
        &fixed.point,
        &fixed.squeeze,
        &fixed.spectral,
        &fixed.probe,
        &qc,
    )?;
    let table = output::point_table(&sample);
    Ok(table.render(args.output.format, &PointSpec { estimand, fixed }, &metadata(&qc)))
}

/// Build the sweep request described by the flags.
pub fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let preset = load_recipe(args.recipe.as_deref(), RecipeKind::Sweep)?;
    let res = resolve(&args.bath, &preset);
    let estimand = res.estimand()?;
    let axis = args.axis.or(preset.axis).ok_or_else(|| missing("axis"))?;
    let range = args.range.or(preset.range).ok_or_else(|| missing("range"))?;
    let points = args.points.or(preset.points).unwrap_or(200);
    if range.0 >= range.1 || range.0.is_nan() || range.1.is_nan() {
        return Err(CliError::Usage(format!(
            "invalid --range: need lo < hi, got {}:{}",
            range.0, range.1
        )));
    }
    if points < 2 {
        return Err(CliError::Usage(format!(
            "invalid --points: need at least 2, got {points}"
        )));
    }
    let placeholder = (range.0.max(0.0), range.0.max(0.0));
    let fixed = res.fixed(&[axis], placeholder)?;
    let spec = SweepSpec {
        estimand,
        axis,
        range,
        points,
        fixed,
    };
    spec.validate().map_err(|e| flag_error("range", e))?;
    Ok(spec)
}

pub fn sweep_output(args: &SweepArgs) -> Result<String, CliError> {
    let spec = sweep_spec(args)?;
    let qc = args.quad.config()?;
    let table = sweep(&spec, &qc)?;
    let rendered = output::sweep_table(&table);
    Ok(rendered.render(args.output.format, &table.spec, &metadata(&qc)))
}

pub fn grid_spec(args: &GridArgs) -> Result<GridSpec, CliError> {
    let preset = load_recipe(args.recipe.as_deref(), RecipeKind::Grid)?;
    let res = resolve(&args.bath, &preset);
    let estimand = res.estimand()?;
    let t_range = args.t_range.or(preset.t_range).ok_or_else(|| missing("t-range"))?;
    let temp_range = args
        .temp_range
        .or(preset.temp_range)
        .ok_or_else(|| missing("T-range"))?;
    let t_points = args.t_points.or(preset.t_points).unwrap_or(50);
    let temp_points = args.temp_points.or(preset.temp_points).unwrap_or(50);
    for (flag, (lo, hi)) in [("t-range", t_range), ("T-range", temp_range)] {
        if lo >= hi || lo.is_nan() || hi.is_nan() || lo < 0.0 {
            return Err(CliError::Usage(format!(
                "invalid --{flag}: need 0 <= lo < hi, got {lo}:{hi}"
            )));
        }
    }
    for (flag, n) in [("t-points", t_points), ("T-points", temp_points)] {
        if n < 2 {
            return Err(CliError::Usage(format!("invalid --{flag}: need at least 2, got {n}")));
        }
    }
    let fixed = res.fixed(&[Axis::Temperature, Axis::Time], (temp_range.0, t_range.0))?;
    let spec = GridSpec {
        estimand,
        t_range,
        temp_range,
        t_points,
        temp_points,
        fixed,
    };
    spec.validate().map_err(|e| flag_error("T-range", e))?;
    Ok(spec)
}

pub fn grid_output(args: &GridArgs) -> Result<String, CliError> {
    let spec = grid_spec(args)?;
    let qc = args.quad.config()?;
    let grid = density_grid(&spec, &qc)?;
    let rendered = output::grid_table(&grid);
    Ok(rendered.render(args.output.format, &grid.spec, &metadata(&qc)))
}

#[derive(Debug, Clone, Serialize)]
pub struct OptTimeSpec {
    pub estimand: Estimand,
    pub temp_range: (f64, f64),
    pub temp_points: usize,
    pub t_max: f64,
    pub coarse_points: usize,
    pub fixed: FixedInputs,
}

pub fn opt_time_spec(args: &OptTimeArgs) -> Result<OptTimeSpec, CliError> {
    let preset = load_recipe(args.recipe.as_deref(), RecipeKind::OptTime)?;
    let res = resolve(&args.bath, &preset);
    let estimand = res.estimand.unwrap_or(Estimand::Temperature);
    let temp_range = args
        .temp_range
        .or(preset.temp_range)
        .ok_or_else(|| missing("T-range"))?;
    let temp_points = args
        .temp_points
        .or(preset.temp_points)
        .ok_or_else(|| missing("T-points"))?;
    let t_max = args.t_max.or(preset.t_max).ok_or_else(|| missing("t-max"))?;
    if temp_points < 1 {
        return Err(CliError::Usage("invalid --T-points: need at least 1".into()));
    }
    let (lo, hi) = temp_range;
    let ordered = if temp_points == 1 { lo <= hi } else { lo < hi };
    if !ordered || lo < 0.0 || (estimand == Estimand::Temperature && lo <= 0.0) {
        return Err(CliError::Usage(format!(
            "invalid --T-range: need 0 < lo < hi, got {lo}:{hi}"
        )));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(CliError::Usage(format!("invalid --t-max: need > 0, got {t_max}")));
    }
    if args.coarse_points < 3 {
        return Err(CliError::Usage("invalid --coarse-points: need at least 3".into()));
    }
    let fixed = res.fixed(&[Axis::Temperature, Axis::Time], (lo, 0.0))?;
    Ok(OptTimeSpec {
        estimand,
        temp_range,
        temp_points,
        t_max,
        coarse_points: args.coarse_points,
        fixed,
    })
}

pub fn opt_time_results(spec: &OptTimeSpec, qc: &QuadratureConfig) -> Result<Vec<OptimalTimeResult>, CliError> {
    let temps = linspace(spec.temp_range.0, spec.temp_range.1, spec.temp_points);
    let search = TimeSearch {
        coarse_points: spec.coarse_points,
        ..TimeSearch::default()
    };
    temps
        .iter()
        .map(|&temp| {
            optimal_time_with(temp, spec.estimand, &spec.fixed, spec.t_max, qc, &search).map_err(CliError::from)
        })
        .collect()
}

pub fn opt_time_output(args: &OptTimeArgs) -> Result<String, CliError> {
    let spec = opt_time_spec(args)?;
    let qc = args.quad.config()?;
    let results = opt_time_results(&spec, &qc)?;
    let rendered = output::opt_time_table(&results);
    Ok(rendered.render(args.output.format, &spec, &metadata(&qc)))
}

fn recipes_listing() -> String {
    let mut out = String::from("recipe,command,curves\n");
    for name in recipes::all_names() {
        let r = recipes::lookup(&name).expect("listed recipe exists");
        let curves = match &r.curves {
            Some((flag, values)) => {
                let vals: Vec<String> = values.iter().map(|v| output::format_number(*v)).collect();
                format!("--{flag} {}", vals.join("|"))
            }
            None => String::new(),
        };
        out.push_str(&format!("{name},{},{curves}\n", r.kind.command()));
    }
    out
}

/// Execute a parsed command line.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Point(a) => emit(&a.output, &point_output(a)?),
        Command::Sweep(a) => emit(&a.output, &sweep_output(a)?),
        Command::Grid(a) => emit(&a.output, &grid_output(a)?),
        Command::OptTime(a) => emit(&a.output, &opt_time_output(a)?),
        Command::Recipes => emit(
            &OutArgs {
                out: "-".into(),
                format: OutputFormat::Csv,
            },
            &recipes_listing(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        let mut full = vec!["squeezed-qfi"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap()
    }

    #[test]
    fn range_parser() {
        assert_eq!(parse_range("0.01:3").unwrap(), (0.01, 3.0));
        assert_eq!(parse_range("-1:2").unwrap(), (-1.0, 2.0));
        assert!(parse_range("1-2").is_err());
        assert!(parse_range("a:2").is_err());
    }

    #[test]
    fn degenerate_range_is_usage_error() {
        let cli = parse(&[
            "sweep",
            "--estimand",
            "T",
            "--axis",
            "T",
            "--range",
            "1:1",
            "--time",
            "1",
            "--r",
            "0.1",
            "--theta",
            "1",
            "--s",
            "0.5",
        ]);
        let Command::Sweep(a) = &cli.command else {
            unreachable!()
        };
        let err = sweep_spec(a).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(err.to_string().contains("--range"));
    }

    #[test]
    fn missing_flag_is_named() {
        let cli = parse(&[
            "point",
            "--estimand",
            "T",
            "--temp",
            "0.5",
            "--time",
            "1",
            "--r",
            "0.1",
            "--theta",
            "1",
        ]);
        let Command::Point(a) = &cli.command else {
            unreachable!()
        };
        let err = point_output(a).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(err.to_string().contains("--s"), "{err}");
    }

    #[test]
    fn invalid_value_names_flag() {
        let cli = parse(&[
            "point",
            "--estimand",
            "T",
            "--temp",
            "0.5",
            "--time",
            "1",
            "--r",
            "-0.1",
            "--theta",
            "1",
            "--s",
            "1",
        ]);
        let Command::Point(a) = &cli.command else {
            unreachable!()
        };
        let err = point_output(a).unwrap_err();
        assert!(err.to_string().contains("--r"), "{err}");
        let cli = parse(&[
            "point",
            "--estimand",
            "T",
            "--temp",
            "0.5",
            "--time",
            "1",
            "--r",
            "0.1",
            "--theta",
            "1",
            "--s",
            "0",
        ]);
        let Command::Point(a) = &cli.command else {
            unreachable!()
        };
        assert!(point_output(a).unwrap_err().to_string().contains("--s"));
    }

    #[test]
    fn theta_optional_without_squeezing() {
        let cli = parse(&[
            "point",
            "--estimand",
            "theta",
            "--r",
            "0",
            "--temp",
            "0.5",
            "--time",
            "1",
            "--s",
            "1",
        ]);
        let Command::Point(a) = &cli.command else {
            unreachable!()
        };
        let text = point_output(a).unwrap();
        let row = text.lines().nth(1).unwrap();
        let qfi: f64 = row.split(',').nth(10).unwrap().parse().unwrap();
        assert_eq!(qfi, 0.0);
    }

    #[test]
    fn recipe_flags_can_be_overridden() {
        let cli = parse(&["sweep", "--recipe", "fig1a", "--r", "1.5", "--points", "5"]);
        let Command::Sweep(a) = &cli.command else {
            unreachable!()
        };
        let spec = sweep_spec(a).unwrap();
        assert_eq!(spec.fixed.squeeze.r(), 1.5);
        assert_eq!(spec.points, 5);
        assert_eq!(spec.fixed.spectral.s(), 0.5);
        assert_eq!(spec.range, (0.01, 3.0));
    }

    #[test]
    fn recipe_for_wrong_subcommand() {
        let cli = parse(&["grid", "--recipe", "fig1a"]);
        let Command::Grid(a) = &cli.command else { unreachable!() };
        assert_eq!(grid_spec(a).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn convergence_failure_maps_to_numerical_exit() {
        let cli = parse(&[
            "point",
            "--estimand",
            "T",
            "--temp",
            "0.5",
            "--time",
            "20",
            "--r",
            "1",
            "--theta",
            "1",
            "--s",
            "0.5",
            "--max-subdivisions",
            "2",
            "--rel-tol",
            "1e-15",
            "--abs-tol",
            "1e-300",
        ]);
        let Command::Point(a) = &cli.command else {
            unreachable!()
        };
        assert_eq!(point_output(a).unwrap_err().exit_code(), EXIT_NUMERICAL);
    }

    #[test]
    fn recipes_listing_covers_all() {
        let text = recipes_listing();
        assert_eq!(text.lines().count(), 38);
        assert!(text.contains("fig10,opt-time,--s 0.5|1.0|3.0"));
    }
}
