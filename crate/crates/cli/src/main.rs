//! `morsepack`: Morse-oscillator coherent-state wave packets from the
//! command line: bound spectra, SU(2) coherent-state coefficients, packet
//! densities at fractional revivals, eighth-revival Wigner decompositions,
//! and a one-shot HI reproduction report.

mod commands;
mod config;
mod output;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

use config::{RunConfig, TimeSpec};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 1.
    Validation(String),
    /// A numerical check missed its tolerance: exit code 2.
    Tolerance(String),
    /// Filesystem trouble: exit code 3.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Tolerance(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Tolerance(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

/// Morse-oscillator coherent-state wave packets and sub-Planck phase-space
/// structure.
#[derive(Debug, Parser)]
#[command(name = "morsepack", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key = value configuration file (CLI flags win over it).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Coherence parameter; repeat for several values.
    #[arg(long = "alpha", global = true, value_name = "REAL")]
    alphas: Vec<f64>,

    /// Time, either absolute (a.u.) or a fraction r/q of T_rev; repeatable.
    #[arg(long = "time", global = true, value_name = "FRAC-or-REAL")]
    times: Vec<String>,

    /// Number of spatial grid points.
    #[arg(long, global = true, value_name = "INT")]
    grid_points: Option<usize>,

    /// Lower edge of the scaled-coordinate grid.
    #[arg(long, global = true, value_name = "REAL")]
    x_min: Option<f64>,

    /// Upper edge of the scaled-coordinate grid.
    #[arg(long, global = true, value_name = "REAL")]
    x_max: Option<f64>,

    /// Number of momentum grid points.
    #[arg(long, global = true, value_name = "INT")]
    p_points: Option<usize>,

    /// Half-width of the symmetric momentum window.
    #[arg(long, global = true, value_name = "REAL")]
    p_max: Option<f64>,

    /// Output directory for CSV files and the report.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Decimal digits in CSV output.
    #[arg(long, global = true, value_name = "INT")]
    precision: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound-level energies and s parameters; prints lambda, n_max, T_cl, T_rev.
    Spectrum {
        /// Also write sampled eigenfunctions (one column per level).
        #[arg(long)]
        eigenfunctions: bool,
    },
    /// Coherent-state expansion coefficients d_m for each alpha.
    Coefficients,
    /// Coordinate-space packet densities |chi(x, t)|² at the requested times.
    Evolve,
    /// Eighth-revival Wigner function, its even/odd/interference parts, and moments.
    Wigner,
    /// Full HI reproduction suite with pass/fail checks; exit 0 iff all pass.
    Report,
}

fn merged_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        config.apply_file(&text, &path.display().to_string())?;
    }
    if !cli.alphas.is_empty() {
        config.alphas = cli.alphas.clone();
    }
    if !cli.times.is_empty() {
        config.times = cli
            .times
            .iter()
            .map(|t| TimeSpec::parse(t))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = cli.grid_points {
        config.grid_points = v;
    }
    if let Some(v) = cli.x_min {
        config.x_min = v;
    }
    if let Some(v) = cli.x_max {
        config.x_max = v;
    }
    if let Some(v) = cli.p_points {
        config.p_points = v;
    }
    if let Some(v) = cli.p_max {
        config.p_max = v;
    }
    if let Some(v) = &cli.out {
        config.out = v.clone();
    }
    if let Some(v) = cli.precision {
        config.precision = v;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = merged_config(&cli)?;
    match cli.command {
        Command::Spectrum { eigenfunctions } => commands::cmd_spectrum(&config, eigenfunctions),
        Command::Coefficients => commands::cmd_coefficients(&config),
        Command::Evolve => commands::cmd_evolve(&config),
        Command::Wigner => commands::cmd_wigner(&config),
        Command::Report => report::cmd_report(&config),
    }
}

fn main() -> ExitCode {
    // clap's own exit codes collide with the documented ones, so usage
    // errors are mapped to the validation code by hand.
    let matches = match Cli::command().try_get_matches() {
        Ok(matches) => matches,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
