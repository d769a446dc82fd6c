//! Command-line front end: sweep drivers, the collapse fit, the polarization
//! table, crossed-field Landau levels, and the self-check suite.
//!
//! Every command reads a flat `key = value` config file (`--config`), accepts
//! the same keys as long flags that override the file, and writes one table
//! or report to `--out` (`-` for stdout) as CSV or JSON. Runs are
//! deterministic: the same inputs produce byte-identical output, with rows in
//! fixed grid order regardless of worker count.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 self-check
//! failure, 3 truncation cap reached where convergence was required.

mod collapse;
mod config;
mod dirac;
mod polarization;
mod spectrum;
mod table;
mod verify;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

use config::ConfigMap;

pub use collapse::{CollapseReport, GapPoint};
pub use verify::{CheckResult, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment override for the worker count, taking precedence over the
/// `threads` key and flag.
pub const THREADS_ENV: &str = "QUASICOLLAPSE_THREADS";

/// A command failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFY, message: message.into() }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Self { code: EXIT_CAP, message: message.into() }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<crate::model::ModelError> for Failure {
    fn from(e: crate::model::ModelError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<crate::fock::FockError> for Failure {
    fn from(e: crate::fock::FockError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<crate::eig::EigError> for Failure {
    fn from(e: crate::eig::EigError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<crate::analytic::AnalyticError> for Failure {
    fn from(e: crate::analytic::AnalyticError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<crate::special::SpecialError> for Failure {
    fn from(e: crate::special::SpecialError) -> Self {
        Failure::config(e.to_string())
    }
}

/// Resolve the worker pool: `QUASICOLLAPSE_THREADS` beats the `threads`
/// key/flag, and with neither set rayon picks its default.
fn thread_pool(cfg: &mut ConfigMap) -> Result<rayon::ThreadPool, Failure> {
    let from_key = cfg.take_usize("threads")?;
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            Failure::config(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))
        })?),
        Err(_) => None,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(from_env.or(from_key).unwrap_or(0))
        .build()
        .map_err(|e| Failure::config(format!("cannot build worker pool: {e}")))
}

#[derive(Parser, Debug)]
#[command(
    name = "quasicollapse",
    version,
    about = "Quasienergy spectra and spectral collapse of the driven Jaynes-Cummings ladder",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Io {
    /// Run configuration file, one `key = value` per line, `#` comments.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output path; `-` or omitted writes to stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Output format: csv or json.
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
}

impl Io {
    fn load(&self) -> Result<ConfigMap, Failure> {
        let mut cfg = match &self.config {
            Some(path) => ConfigMap::from_file(path)?,
            None => ConfigMap::default(),
        };
        cfg.set_flag("out", self.out.as_deref());
        cfg.set_flag("format", self.format.as_deref());
        Ok(cfg)
    }
}

macro_rules! overlay {
    ($cfg:expr, $args:expr, [$($key:ident),* $(,)?]) => {
        $($cfg.set_flag(stringify!($key), $args.$key.as_deref());)*
    };
}

#[derive(clap::Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    io: Io,
    /// Scaled coupling of the eta-model.
    #[arg(long)]
    lambda: Option<String>,
    /// Counter-rotating weight in [0, 1].
    #[arg(long)]
    eta: Option<String>,
    /// Scaled drive at the start of the sweep.
    #[arg(long = "epsilon_start")]
    epsilon_start: Option<String>,
    /// Scaled drive at the end of the sweep.
    #[arg(long = "epsilon_stop")]
    epsilon_stop: Option<String>,
    /// Number of sweep points.
    #[arg(long = "epsilon_count")]
    epsilon_count: Option<String>,
    /// How many quasienergies nearest zero to report per point.
    #[arg(long)]
    levels: Option<String>,
    /// Drift tolerance for truncation convergence.
    #[arg(long)]
    tol: Option<String>,
    /// First Fock cutoff of the doubling ladder.
    #[arg(long)]
    start: Option<String>,
    /// Largest Fock cutoff tried before giving up.
    #[arg(long = "n_max")]
    n_max: Option<String>,
    /// Exit 3 if any sweep point fails to converge.
    #[arg(long = "require_convergence")]
    require_convergence: Option<String>,
    /// Worker count (0 = automatic).
    #[arg(long)]
    threads: Option<String>,
}

#[derive(clap::Args, Debug)]
struct CollapseArgs {
    #[command(flatten)]
    io: Io,
    /// Scaled coupling of the eta-model.
    #[arg(long)]
    lambda: Option<String>,
    /// Counter-rotating weight in [0, 1].
    #[arg(long)]
    eta: Option<String>,
    /// Scaled drive at the start of the sweep (default 0).
    #[arg(long = "epsilon_start")]
    epsilon_start: Option<String>,
    /// Scaled drive at the end of the sweep (default 0.9 of critical).
    #[arg(long = "epsilon_stop")]
    epsilon_stop: Option<String>,
    /// Number of sweep points (default 40).
    #[arg(long = "epsilon_count")]
    epsilon_count: Option<String>,
    /// Half-width of the window dropped around the critical drive, as a
    /// fraction of it (default 0.02).
    #[arg(long)]
    exclusion: Option<String>,
    /// Drift tolerance for truncation convergence.
    #[arg(long)]
    tol: Option<String>,
    /// First Fock cutoff of the doubling ladder.
    #[arg(long)]
    start: Option<String>,
    /// Largest Fock cutoff tried before giving up.
    #[arg(long = "n_max")]
    n_max: Option<String>,
    /// Worker count (0 = automatic).
    #[arg(long)]
    threads: Option<String>,
}

#[derive(clap::Args, Debug)]
struct PolarizationArgs {
    #[command(flatten)]
    io: Io,
    /// Scaled coupling of the eta-model.
    #[arg(long)]
    lambda: Option<String>,
    /// Counter-rotating weight in [0, 1].
    #[arg(long)]
    eta: Option<String>,
    /// Scaled drive at the start of the sweep.
    #[arg(long = "epsilon_start")]
    epsilon_start: Option<String>,
    /// Scaled drive at the end of the sweep.
    #[arg(long = "epsilon_stop")]
    epsilon_stop: Option<String>,
    /// Number of sweep points.
    #[arg(long = "epsilon_count")]
    epsilon_count: Option<String>,
    /// Fock cutoff for the numeric near-zero eigenvector.
    #[arg(long = "n_max")]
    n_max: Option<String>,
    /// Worker count (0 = automatic).
    #[arg(long)]
    threads: Option<String>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    io: Io,
    /// Scaled coupling used by the parameter-dependent checks.
    #[arg(long)]
    lambda: Option<String>,
    /// Scaled drive used by the parameter-dependent checks.
    #[arg(long)]
    epsilon: Option<String>,
    /// Counter-rotating weight used by the squeeze check.
    #[arg(long)]
    eta: Option<String>,
    /// Fock cutoff for the squeeze check.
    #[arg(long = "n_max")]
    n_max: Option<String>,
    /// Interior fraction of levels compared in the squeeze check.
    #[arg(long)]
    fraction: Option<String>,
    /// Random parameter draws for the mapping and boost checks.
    #[arg(long)]
    draws: Option<String>,
    /// RNG seed for the random draws.
    #[arg(long)]
    seed: Option<String>,
    /// Deliberately flip the squeeze sign; the suite must then fail.
    #[arg(long = "flip_squeeze_sign")]
    flip_squeeze_sign: Option<String>,
}

#[derive(clap::Args, Debug)]
struct DiracArgs {
    #[command(flatten)]
    io: Io,
    /// Electric field strength.
    #[arg(long = "e_field")]
    e_field: Option<String>,
    /// Magnetic field strength.
    #[arg(long = "b_field")]
    b_field: Option<String>,
    /// Transverse wavenumber along the drift direction.
    #[arg(long)]
    k2: Option<String>,
    /// Wavenumber along the magnetic field.
    #[arg(long)]
    k3: Option<String>,
    /// Number of Landau levels to tabulate.
    #[arg(long = "n_levels")]
    n_levels: Option<String>,
    /// Fail unless the fields sit in this regime
    /// (discrete, critical, continuous).
    #[arg(long = "require_regime")]
    require_regime: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quasienergies nearest zero over a drive sweep, with trust flags.
    Spectrum(SpectrumArgs),
    /// Fit the gap-closing exponent and locate the critical drive.
    #[command(name = "collapse-fit")]
    CollapseFit(CollapseArgs),
    /// Spin polarization of the near-zero mode across the transition.
    Polarization(PolarizationArgs),
    /// Run the internal identity checks and report pass/fail.
    Verify(VerifyArgs),
    /// Relativistic Landau levels for a crossed-field configuration.
    Dirac(DiracArgs),
}

impl Command {
    fn dispatch(self) -> Result<(), Failure> {
        match self {
            Command::Spectrum(a) => {
                let mut cfg = a.io.load()?;
                overlay!(cfg, a, [
                    lambda, eta, epsilon_start, epsilon_stop, epsilon_count,
                    levels, tol, start, n_max, require_convergence, threads,
                ]);
                spectrum::run(cfg)
            }
            Command::CollapseFit(a) => {
                let mut cfg = a.io.load()?;
                overlay!(cfg, a, [
                    lambda, eta, epsilon_start, epsilon_stop, epsilon_count,
                    exclusion, tol, start, n_max, threads,
                ]);
                collapse::run(cfg)
            }
            Command::Polarization(a) => {
                let mut cfg = a.io.load()?;
                overlay!(cfg, a, [
                    lambda, eta, epsilon_start, epsilon_stop, epsilon_count,
                    n_max, threads,
                ]);
                polarization::run(cfg)
            }
            Command::Verify(a) => {
                let mut cfg = a.io.load()?;
                overlay!(cfg, a, [
                    lambda, epsilon, eta, n_max, fraction, draws, seed,
                    flip_squeeze_sign,
                ]);
                verify::run(cfg)
            }
            Command::Dirac(a) => {
                let mut cfg = a.io.load()?;
                overlay!(cfg, a, [e_field, b_field, k2, k3, n_levels, require_regime]);
                dirac::run(cfg)
            }
        }
    }
}

/// Parse the command line, run the chosen command, and return the process
/// exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command.dispatch() {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("quasicollapse: {failure}");
            failure.code
        }
    }
}
