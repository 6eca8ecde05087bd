//! Command-line front end. The `qwire` binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 on success, 2 when arguments or parameters fail validation,
//! 1 when a computation or write fails.

mod config;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::quadrature::QuadConfig;
use crate::time_domain::{self, IntegratorConfig};
use crate::transport::{self, BiasWindow, Method};
use crate::tridiag::{self, ArithmeticMode, SymToeplitzTridiag};
use crate::wire::WireParams;

pub use config::ConfigFile;
pub use render::fmt_f64;

/// Environment variable naming a directory that relative `--output` paths
/// are resolved against.
pub const OUTPUT_DIR_ENV: &str = "QWIRE_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qwire", version, about = "Continuant identities and quantum-wire transmittance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate cof(A_N)^2 against A_{N-1}^2 - A_{N-2} A_N for N = 2..n-max.
    Identity(IdentityArgs),
    /// Transmittance on a uniform energy grid.
    Spectrum(SpectrumArgs),
    /// Landauer current through the wire.
    Current(CurrentArgs),
    /// Integrate the evolution-operator amplitudes in time.
    Evolve(EvolveArgs),
    /// Compare the two transmittance routes point by point.
    Equivalence(EquivalenceArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// key=value parameter file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<Format>,
    /// Write here instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WireArgs {
    /// Number of sites.
    #[arg(short = 'N', long = "sites", visible_alias = "n")]
    n: Option<usize>,
    /// On-site energy (default 0).
    #[arg(long, allow_negative_numbers = true)]
    eps0: Option<f64>,
    /// Nearest-neighbour hopping.
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Lead broadening.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Effective lead band width (default 1).
    #[arg(long, allow_negative_numbers = true)]
    bandwidth: Option<f64>,
    /// Lead coupling; must satisfy gamma = 2 pi v_lead^2 / bandwidth.
    #[arg(long = "v-lead", allow_negative_numbers = true)]
    v_lead: Option<f64>,
}

const WIRE_KEYS: &[&str] = &["n", "sites", "eps0", "v", "gamma", "bandwidth", "v-lead"];
const COMMON_KEYS: &[&str] = &["format", "output"];

#[derive(Debug, Args)]
struct IdentityArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// exact or float (default float).
    #[arg(long)]
    mode: Option<ArithmeticMode>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    wire: WireArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// gf, eo or both (default both).
    #[arg(long)]
    method: Option<Method>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CurrentArgs {
    #[command(flatten)]
    wire: WireArgs,
    #[arg(long = "mu-l", allow_negative_numbers = true)]
    mu_l: Option<f64>,
    #[arg(long = "mu-r", allow_negative_numbers = true)]
    mu_r: Option<f64>,
    /// Lead temperature, k_B = 1 (default 0).
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// Relative quadrature tolerance (default 1e-10).
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    wire: WireArgs,
    /// Lead-state energy eps_k (default eps0).
    #[arg(long = "drive-energy", allow_negative_numbers = true)]
    drive_energy: Option<f64>,
    /// Drive amplitude (default: the lead coupling V_L).
    #[arg(long = "drive-amplitude", allow_negative_numbers = true)]
    drive_amplitude: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    #[arg(long = "t-max", allow_negative_numbers = true)]
    t_max: Option<f64>,
    /// Trailing window for the steady-state summary.
    #[arg(long, allow_negative_numbers = true)]
    window: Option<f64>,
    /// Emit every stride-th step.
    #[arg(long)]
    stride: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct EquivalenceArgs {
    #[command(flatten)]
    wire: WireArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    common: Common,
}

/// Parse `args` (including the program name), execute, and write the result.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let (text, output) = match execute(cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if e.is_validation() { 2 } else { 1 };
        }
    };
    let written = match output {
        Some(path) => {
            let path = resolve_output(path);
            std::fs::write(&path, text.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn resolve_output(path: PathBuf) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path,
    }
}

fn execute(command: Command) -> Result<(String, Option<PathBuf>)> {
    match command {
        Command::Identity(a) => cmd_identity(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Current(a) => cmd_current(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Equivalence(a) => cmd_equivalence(a),
    }
}

fn load_config(common: &mut Common, known: &[&[&str]]) -> Result<ConfigFile> {
    let cfg = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let keys: Vec<&str> = known.iter().flat_map(|k| k.iter().copied()).chain(COMMON_KEYS.iter().copied()).collect();
    cfg.check_known(&keys)?;
    cfg.fill(&mut common.format, "format")?;
    cfg.fill(&mut common.output, "output")?;
    Ok(cfg)
}

fn required<T>(slot: Option<T>, flag: &str) -> Result<T> {
    slot.ok_or_else(|| Error::InvalidParameter(format!("missing required --{flag}")))
}

impl WireArgs {
    fn resolve(mut self, cfg: &ConfigFile) -> Result<WireParams> {
        cfg.fill(&mut self.n, "n")?;
        cfg.fill(&mut self.n, "sites")?;
        cfg.fill(&mut self.eps0, "eps0")?;
        cfg.fill(&mut self.v, "v")?;
        cfg.fill(&mut self.gamma, "gamma")?;
        cfg.fill(&mut self.bandwidth, "bandwidth")?;
        cfg.fill(&mut self.v_lead, "v-lead")?;
        WireParams::from_parts(
            required(self.n, "sites")?,
            self.eps0.unwrap_or(0.0),
            required(self.v, "v")?,
            required(self.gamma, "gamma")?,
            self.bandwidth.unwrap_or(1.0),
            self.v_lead,
        )
    }
}

impl GridArgs {
    fn resolve(mut self, cfg: &ConfigFile) -> Result<(f64, f64, usize)> {
        cfg.fill(&mut self.from, "from")?;
        cfg.fill(&mut self.to, "to")?;
        cfg.fill(&mut self.points, "points")?;
        Ok((
            required(self.from, "from")?,
            required(self.to, "to")?,
            required(self.points, "points")?,
        ))
    }
}

fn cmd_identity(mut a: IdentityArgs) -> Result<(String, Option<PathBuf>)> {
    let cfg = load_config(&mut a.common, &[&["alpha", "beta", "n-max", "mode"]])?;
    cfg.fill(&mut a.alpha, "alpha")?;
    cfg.fill(&mut a.beta, "beta")?;
    cfg.fill(&mut a.n_max, "n-max")?;
    cfg.fill(&mut a.mode, "mode")?;
    let alpha = required(a.alpha, "alpha")?;
    let beta = required(a.beta, "beta")?;
    let n_max = required(a.n_max, "n-max")?;
    let mode = a.mode.unwrap_or_default();
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("--n-max must be at least 2, got {n_max}")));
    }
    let base = SymToeplitzTridiag::new(alpha, beta, n_max)?;
    let rows = (2..=n_max)
        .map(|n| tridiag::identity_terms(&base.with_dim(n), mode))
        .collect::<Result<Vec<_>>>()?;
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => render::identity_csv(alpha, beta, mode, &rows),
        Format::Json => render::identity_json(alpha, beta, mode, &rows),
    };
    Ok((text, a.common.output))
}

fn cmd_spectrum(mut a: SpectrumArgs) -> Result<(String, Option<PathBuf>)> {
    let cfg = load_config(&mut a.common, &[WIRE_KEYS, &["from", "to", "points", "method"]])?;
    cfg.fill(&mut a.method, "method")?;
    let p = a.wire.resolve(&cfg)?;
    let (from, to, points) = a.grid.resolve(&cfg)?;
    let method = a.method.unwrap_or(Method::Both);
    let s = transport::spectrum(&p, from, to, points, method)?;
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => render::spectrum_csv(&s, from, to),
        Format::Json => render::spectrum_json(&s, from, to),
    };
    Ok((text, a.common.output))
}

fn cmd_current(mut a: CurrentArgs) -> Result<(String, Option<PathBuf>)> {
    let cfg = load_config(&mut a.common, &[WIRE_KEYS, &["mu-l", "mu-r", "temperature", "rel-tol"]])?;
    cfg.fill(&mut a.mu_l, "mu-l")?;
    cfg.fill(&mut a.mu_r, "mu-r")?;
    cfg.fill(&mut a.temperature, "temperature")?;
    cfg.fill(&mut a.rel_tol, "rel-tol")?;
    let p = a.wire.resolve(&cfg)?;
    let bias = BiasWindow::new(
        required(a.mu_l, "mu-l")?,
        required(a.mu_r, "mu-r")?,
        a.temperature.unwrap_or(0.0),
    )?;
    let mut quad = QuadConfig::default();
    if let Some(tol) = a.rel_tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::InvalidParameter(format!("--rel-tol must lie in (0, 1), got {tol}")));
        }
        quad.rel_tol = tol;
    }
    let current = transport::landauer_current(&p, &bias, &quad);
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Csv => render::current_csv(&p, &bias, &current),
        Format::Json => render::current_json(&p, &bias, &current),
    };
    Ok((text, a.common.output))
}

fn cmd_evolve(mut a: EvolveArgs) -> Result<(String, Option<PathBuf>)> {
    let cfg = load_config(
        &mut a.common,
        &[WIRE_KEYS, &["drive-energy", "drive-amplitude", "dt", "t-max", "window", "stride"]],
    )?;
    cfg.fill(&mut a.drive_energy, "drive-energy")?;
    cfg.fill(&mut a.drive_amplitude, "drive-amplitude")?;
    cfg.fill(&mut a.dt, "dt")?;
    cfg.fill(&mut a.t_max, "t-max")?;
    cfg.fill(&mut a.window, "window")?;
    cfg.fill(&mut a.stride, "stride")?;
    let p = a.wire.resolve(&cfg)?;
    let drive = a.drive_energy.unwrap_or(p.eps0());
    let defaults = IntegratorConfig::for_drive(&p, drive);
    let t_max = a.t_max.unwrap_or(defaults.t_max);
    let window = a
        .window
        .unwrap_or_else(|| defaults.convergence_window.min(0.5 * t_max));
    if a.stride == Some(0) {
        return Err(Error::Config("--stride must be at least 1".into()));
    }
    let integ = IntegratorConfig::new(a.dt.unwrap_or(defaults.dt), t_max, window)?
        .with_stride(a.stride.unwrap_or(1));
    let amplitude = a.drive_amplitude.unwrap_or(p.v_lead());
    let traj = time_domain::integrate_with_amplitude(&p, drive, amplitude, &integ)?;
    let summary = time_domain::steady_state_compare(&traj, &p);
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => render::evolve_csv(&traj, &integ, &summary),
        Format::Json => render::evolve_json(&traj, &integ, &summary),
    };
    Ok((text, a.common.output))
}

fn cmd_equivalence(mut a: EquivalenceArgs) -> Result<(String, Option<PathBuf>)> {
    let cfg = load_config(&mut a.common, &[WIRE_KEYS, &["from", "to", "points"]])?;
    let p = a.wire.resolve(&cfg)?;
    let (from, to, points) = a.grid.resolve(&cfg)?;
    let grid = transport::uniform_grid(from, to, points)?;
    let report = transport::equivalence_report(&p, &grid)?;
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => render::equivalence_csv(&p, &report),
        Format::Json => render::equivalence_json(&p, &report),
    };
    Ok((text, a.common.output))
}
