//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 convergence failure,
//! 4 runtime abort. Summaries go to standard output as `key=value` lines,
//! data to the `--out` files, diagnostics to standard error (level set by
//! `STIELTJES_LOG`).

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::orthopoly::{self, PolynomialSpec};
use crate::paraxial::{self, BeamField, DoubleSlit, Encoding, ParaxialError};
use crate::qhj::{self, QuantumProblem};
use crate::stieltjes::{self, RationalField, SearchOptions, SolverOptions, StieltjesError};
use crate::vortex::{self, IntegrateOptions, Vortex, VortexError, VortexSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_ABORT: i32 = 4;

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    fn convergence(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONVERGENCE, message: message.into() }
    }

    fn abort(message: impl Into<String>) -> Self {
        Self { code: EXIT_ABORT, message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::abort(format!("i/o error: {e}"))
    }
}

impl From<ParaxialError> for CliError {
    fn from(e: ParaxialError) -> Self {
        match e {
            ParaxialError::Io(e) => Self::abort(format!("i/o error: {e}")),
            other => Self::config(other.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Electrostatic equilibria, point vortices, pole expansions and paraxial beams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Hermite,
    Laguerre,
    Jacobi,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paraxial,
    Helmholtz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    F64le,
    Csv,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::F64le => Encoding::F64le,
            EncodingArg::Csv => Encoding::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the equilibrium of N identical charges in an external field.
    Equilibrium {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        gamma_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma_im: f64,
        #[arg(long, default_value_t = stieltjes::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = stieltjes::DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Field description for `--family custom`.
        #[arg(long)]
        field_json: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Multi-start residual minimization in a constant background field.
    BackgroundSearch {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p_im: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        gamma_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma_im: f64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate point-vortex dynamics from a JSON configuration.
    VortexSim {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Harmonic-oscillator bound state from its pole expansion.
    Qhj {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        hbar: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        mass: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        omega: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a sampled Gaussian beam envelope as a field file.
    GaussianField {
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        dx: f64,
        #[arg(long, default_value_t = 16.0)]
        w0: f64,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, value_enum, default_value_t = EncodingArg::F64le)]
        encoding: EncodingArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Propagate a field file with the paraxial or angular-spectrum propagator.
    Propagate {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        dz: f64,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum)]
        encoding: Option<EncodingArg>,
        /// Compare the result with a Gaussian beam of this waist (waist at z = 0).
        #[arg(long)]
        reference_w0: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Two-slit far-field intensity.
    DoubleSlit {
        #[arg(long)]
        wavelength: f64,
        #[arg(long)]
        separation: f64,
        #[arg(long)]
        slit_width: f64,
        #[arg(long)]
        distance: f64,
        #[arg(long)]
        screen_extent: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Complex number given either as a bare real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair(Complex64),
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Real(r) => Complex64::new(r, 0.0),
            ComplexValue::Pair(c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VortexSpec {
    pub position: Complex64,
    pub strength: ComplexValue,
}

/// `vortex-sim` configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VortexSimConfig {
    pub vortices: Vec<VortexSpec>,
    #[serde(default)]
    pub background: RationalField,
    pub t_end: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default)]
    pub allow_complex_gamma: bool,
}

fn default_dt() -> f64 {
    1e-3
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Serialize)]
struct QhjReport {
    level: usize,
    hbar: f64,
    mass: f64,
    omega: f64,
    poles: Vec<f64>,
    energy: f64,
    max_riccati_residual: f64,
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("STIELTJES_LOG", "error");
    let _ = env_logger::Builder::from_env(env).target(env_logger::Target::Stderr).try_init();
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{e}");
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_CONFIG
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    eprint!("{e}");
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Equilibrium { family, n, alpha, beta, gamma_re, gamma_im, tol, max_iter, field_json, out: path } => {
            cmd_equilibrium(family, n, alpha, beta, Complex64::new(gamma_re, gamma_im), tol, max_iter, field_json.as_deref(), &path, out)
        }
        Command::BackgroundSearch { n, p_re, p_im, gamma_re, gamma_im, restarts, seed, out: path } => cmd_background_search(
            n,
            Complex64::new(p_re, p_im),
            Complex64::new(gamma_re, gamma_im),
            restarts,
            seed,
            &path,
            out,
        ),
        Command::VortexSim { config, out: path } => cmd_vortex_sim(&config, &path, out),
        Command::Qhj { n, hbar, mass, omega, out: path } => cmd_qhj(n, hbar, mass, omega, &path, out),
        Command::GaussianField { n, dx, w0, k, z, encoding, out: path } => {
            let field = paraxial::gaussian_field(n, dx, w0, k, z)?;
            paraxial::write_field(&path, &field, encoding.into())?;
            writeln!(out, "rayleigh_range={:e}", paraxial::rayleigh_range(w0, k))?;
            writeln!(out, "norm={:e}", field.norm())?;
            Ok(())
        }
        Command::Propagate { mode, input, dz, steps, encoding, reference_w0, out: path } => {
            cmd_propagate(mode, &input, dz, steps, encoding, reference_w0, &path, out)
        }
        Command::DoubleSlit { wavelength, separation, slit_width, distance, screen_extent, samples, out: path } => {
            let geometry = DoubleSlit { wavelength, separation, slit_width, distance, screen_extent, samples };
            cmd_double_slit(&geometry, &path, out)
        }
    }
}

fn count(n: i64, what: &str) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| CliError::config(format!("{what} must be non-negative, got {n}")))
}

fn create(path: &Path) -> Result<BufWriter<fs::File>, CliError> {
    Ok(BufWriter::new(fs::File::create(path)?))
}

fn write_positions(path: &Path, positions: &[Complex64], residual: &[Complex64]) -> CliResult {
    let mut w = create(path)?;
    writeln!(w, "index,re,im,residual_re,residual_im")?;
    for (i, (z, r)) in positions.iter().zip(residual).enumerate() {
        writeln!(w, "{i},{:e},{:e},{:e},{:e}", z.re, z.im, r.re, r.im)?;
    }
    w.flush()?;
    Ok(())
}

fn inf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[allow(clippy::too_many_arguments)]
fn cmd_equilibrium(
    family: FamilyArg,
    n: i64,
    alpha: f64,
    beta: f64,
    gamma: Complex64,
    tol: f64,
    max_iter: usize,
    field_json: Option<&Path>,
    path: &Path,
    out: &mut dyn Write,
) -> CliResult {
    let n = count(n, "n")?;
    if n == 0 {
        return Err(CliError::config("n must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(CliError::config(format!("tol must be positive, got {tol}")));
    }
    if gamma == Complex64::new(0.0, 0.0) || !(gamma.re.is_finite() && gamma.im.is_finite()) {
        return Err(CliError::config("gamma must be finite and nonzero"));
    }
    let spec = match family {
        FamilyArg::Hermite => Some(PolynomialSpec::hermite(n)),
        FamilyArg::Laguerre => Some(PolynomialSpec::laguerre(n, alpha)),
        FamilyArg::Jacobi => Some(PolynomialSpec::jacobi(n, alpha, beta)),
        FamilyArg::Custom => None,
    };
    let field = match (spec, field_json) {
        (Some(_), Some(_)) => return Err(CliError::config("--field-json is only valid with --family custom")),
        (None, None) => return Err(CliError::config("--family custom needs --field-json")),
        (Some(spec), None) => {
            spec.validate().map_err(|e| CliError::config(e.to_string()))?;
            RationalField::for_polynomial(&spec)
        }
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::config(format!("cannot read {}: {e}", p.display())))?;
            let field: RationalField = serde_json::from_str(&text).map_err(|e| CliError::config(format!("bad field JSON: {e}")))?;
            field.validate().map_err(|e| CliError::config(e.to_string()))?;
            field
        }
    };
    let opts = SolverOptions { tol, max_iter, ..SolverOptions::default() };
    let config = match stieltjes::solve_equilibrium(&field, n, gamma, None, &opts) {
        Ok(c) => c,
        Err(StieltjesError::ConvergenceFailure { best, best_residual, iterations }) => {
            let r = stieltjes::residual(&best).unwrap_or_default();
            write_positions(path, &best.positions, &r)?;
            writeln!(out, "status=convergence-failure")?;
            writeln!(out, "max_residual={best_residual:e}")?;
            if family == FamilyArg::Custom && field.linear == Complex64::new(0.0, 0.0) && field.poles.is_empty() {
                let sum: Complex64 = r.iter().sum();
                writeln!(out, "residual_sum_re={:e}", sum.re)?;
                writeln!(out, "residual_sum_im={:e}", sum.im)?;
            }
            return Err(CliError::convergence(format!("no equilibrium after {iterations} iterations (best residual {best_residual:e})")));
        }
        Err(e) => return Err(CliError::config(e.to_string())),
    };
    let r = stieltjes::residual(&config).map_err(|e| CliError::abort(e.to_string()))?;
    write_positions(path, &config.positions, &r)?;
    writeln!(out, "status=converged")?;
    writeln!(out, "max_residual={:e}", inf_norm(&r))?;
    if let Some(spec) = spec {
        if gamma == Complex64::new(1.0, 0.0) {
            let oracle = orthopoly::roots(&spec).map_err(|e| CliError::abort(e.to_string()))?;
            let dev = config
                .positions
                .iter()
                .zip(&oracle)
                .map(|(z, x)| (z - Complex64::new(*x, 0.0)).norm())
                .fold(0.0, f64::max);
            writeln!(out, "oracle_max_deviation={dev:e}")?;
        }
    }
    Ok(())
}

fn cmd_background_search(n: i64, p: Complex64, gamma: Complex64, restarts: usize, seed: u64, path: &Path, out: &mut dyn Write) -> CliResult {
    let n = count(n, "n")?;
    if n == 0 || gamma == Complex64::new(0.0, 0.0) {
        return Err(CliError::config("need n >= 1 and a nonzero gamma"));
    }
    let opts = SearchOptions { restarts, seed, ..SearchOptions::default() };
    let found = stieltjes::constant_background_search(n, p, gamma, &opts, Execution::default())
        .map_err(|e| CliError::config(e.to_string()))?;
    let r = stieltjes::residual(&found.config).map_err(|e| CliError::abort(e.to_string()))?;
    write_positions(path, &found.config.positions, &r)?;
    writeln!(out, "best_residual_inf={:e}", found.residual_inf)?;
    writeln!(out, "best_residual_l2={:e}", found.residual_l2)?;
    writeln!(out, "residual_sum_re={:e}", found.residual_sum.re)?;
    writeln!(out, "residual_sum_im={:e}", found.residual_sum.im)?;
    writeln!(out, "lower_bound={:e}", p.norm())?;
    Ok(())
}

fn cmd_vortex_sim(config: &Path, path: &Path, out: &mut dyn Write) -> CliResult {
    let text = fs::read_to_string(config).map_err(|e| CliError::config(format!("cannot read {}: {e}", config.display())))?;
    let cfg: VortexSimConfig = serde_json::from_str(&text).map_err(|e| CliError::config(format!("bad vortex config: {e}")))?;
    let vortices = cfg
        .vortices
        .iter()
        .map(|v| Vortex { position: v.position, strength: v.strength.into() })
        .collect();
    let system = VortexSystem::new(vortices, cfg.background).map_err(|e| CliError::config(e.to_string()))?;
    let opts = IntegrateOptions {
        output_stride: cfg.stride,
        allow_complex_gamma: cfg.allow_complex_gamma,
        ..IntegrateOptions::new(cfg.t_end, cfg.dt)
    };
    let (traj, failure) = match vortex::integrate(&system, &opts) {
        Ok(t) => (t, None),
        Err(VortexError::Collision { time, gap, partial }) => {
            (*partial, Some(CliError::abort(format!("collision at t = {time} (gap {gap:e}); partial trajectory written"))))
        }
        Err(e) => return Err(CliError::config(e.to_string())),
    };
    let mut w = create(path)?;
    traj.write_csv(&mut w)?;
    w.flush()?;
    writeln!(out, "samples={}", traj.len())?;
    writeln!(out, "t_final={:e}", traj.times.last().copied().unwrap_or(system.time))?;
    writeln!(out, "max_displacement={:e}", traj.max_displacement())?;
    writeln!(out, "impulse_drift={:e}", traj.impulse_drift())?;
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn cmd_qhj(n: i64, hbar: f64, mass: f64, omega: f64, path: &Path, out: &mut dyn Write) -> CliResult {
    let level = count(n, "n")?;
    let problem = QuantumProblem::harmonic(mass, omega, hbar, level).map_err(|e| CliError::config(e.to_string()))?;
    let state = qhj::solve_bound_state(&problem).map_err(|e| match e {
        qhj::QhjError::InvalidProblem(m) => CliError::config(m),
        other => CliError::convergence(other.to_string()),
    })?;
    let residual = qhj::max_riccati_residual(&state, &problem).map_err(|e| CliError::abort(e.to_string()))?;
    let report = QhjReport {
        level,
        hbar,
        mass,
        omega,
        poles: state.poles.clone(),
        energy: state.energy,
        max_riccati_residual: residual,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::abort(e.to_string()))?;
    fs::write(path, json + "\n")?;
    writeln!(out, "poles={}", state.poles.len())?;
    writeln!(out, "energy={:e}", state.energy)?;
    writeln!(out, "max_riccati_residual={residual:e}")?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_propagate(
    mode: ModeArg,
    input: &Path,
    dz: f64,
    steps: usize,
    encoding: Option<EncodingArg>,
    reference_w0: Option<f64>,
    path: &Path,
    out: &mut dyn Write,
) -> CliResult {
    if !dz.is_finite() {
        return Err(CliError::config("dz must be finite"));
    }
    if mode == ModeArg::Helmholtz && dz < 0.0 {
        return Err(CliError::config("helmholtz propagation needs dz >= 0"));
    }
    let header: paraxial::FieldHeader = {
        let text = fs::read_to_string(input).map_err(|e| CliError::config(format!("cannot read {}: {e}", input.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("bad field header: {e}")))?
    };
    let field = paraxial::read_field(input).map_err(|e| match e {
        ParaxialError::Io(e) => CliError::config(format!("cannot read payload: {e}")),
        other => CliError::config(other.to_string()),
    })?;
    let norm_in = field.norm();
    let mut cur: BeamField = field;
    for _ in 0..steps {
        cur = match mode {
            ModeArg::Paraxial => paraxial::paraxial_propagate(&cur, dz),
            ModeArg::Helmholtz => paraxial::helmholtz_propagate(&cur, dz)?,
        };
    }
    let encoding = encoding.map(Encoding::from).unwrap_or(header.encoding);
    paraxial::write_field(path, &cur, encoding)?;
    let norm_out = cur.norm();
    writeln!(out, "z={:e}", cur.z)?;
    writeln!(out, "norm_in={norm_in:e}")?;
    writeln!(out, "norm_out={norm_out:e}")?;
    writeln!(out, "norm_drift={:e}", ((norm_out - norm_in) / norm_in).abs())?;
    if let Some(w0) = reference_w0 {
        if !(w0 > 0.0) {
            return Err(CliError::config("reference waist must be positive"));
        }
        let envelope = match mode {
            ModeArg::Paraxial => cur.clone(),
            ModeArg::Helmholtz => paraxial::full_to_envelope(&cur),
        };
        let reference = paraxial::gaussian_field_like(&envelope, w0);
        writeln!(out, "reference_l2_error={:e}", envelope.relative_l2_error(&reference))?;
    }
    Ok(())
}

fn cmd_double_slit(geometry: &DoubleSlit, path: &Path, out: &mut dyn Write) -> CliResult {
    let profile = paraxial::double_slit(geometry)?;
    let mut w = create(path)?;
    profile.write_csv(&mut w)?;
    w.flush()?;
    writeln!(out, "expected_fringe_spacing={:e}", geometry.fringe_period())?;
    writeln!(out, "sample_spacing={:e}", profile.sample_spacing())?;
    match profile.fringe_spacing() {
        Some(s) => writeln!(out, "fringe_spacing={s:e}")?,
        None => return Err(CliError::abort("no fringes found in the screen window")),
    }
    Ok(())
}
