//! `ditop`: minimum-time control of the double integrator from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 validation failure, 4 I/O error.

mod args;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use args::{parse_grid, InitialStateArgs};
use commands::ScaleInput;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "ditop",
    version,
    about = "Exact minimum-time bang-bang control of the double integrator",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the optimal bang schedule, switch point and minimal time.
    Plan {
        #[command(flatten)]
        state: InitialStateArgs,
        /// Curve-membership tolerance.
        #[arg(long, default_value_t = ditop::DEFAULT_EPS_CURVE)]
        eps_curve: f64,
        /// Attach the optimality certificate to the output.
        #[arg(long)]
        certificate: bool,
        /// Multiplier for the certificate (any positive value certifies).
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the planned trajectory, switch instant included.
    Simulate {
        #[command(flatten)]
        state: InitialStateArgs,
        #[arg(long, default_value_t = ditop::DEFAULT_EPS_CURVE)]
        eps_curve: f64,
        /// Number of uniform samples over [0, t_star].
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the discrete closed-loop feedback law to the deadband.
    Regulate {
        #[command(flatten)]
        state: InitialStateArgs,
        #[arg(long, default_value_t = ditop::DEFAULT_EPS_CURVE)]
        eps_curve: f64,
        /// Control update and integration interval.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Radius of the terminal ball where actuation stops.
        #[arg(long, default_value_t = 1e-2)]
        deadband: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a plan against its certificate and the brute-force oracle.
    Validate {
        #[command(flatten)]
        state: InitialStateArgs,
        #[arg(long, default_value_t = ditop::DEFAULT_EPS_CURVE)]
        eps_curve: f64,
        /// Number of certificate samples over [0, t_star].
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Oracle search grid step.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan (and optionally validate) a rectangular grid of initial states.
    Batch {
        /// Grid as xmin:xmax:n,vmin:vmax:n.
        #[arg(long, default_value = "-5:5:21,-5:5:21", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = ditop::DEFAULT_EPS_CURVE)]
        eps_curve: f64,
        /// Also run certificate and oracle checks per state.
        #[arg(long)]
        validate: bool,
        /// Certificate samples per state when validating.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Oracle search grid step when validating.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between physical and scaled coordinates.
    Scale {
        /// Inertia parameter of the physical plant.
        #[arg(long)]
        inertia: f64,
        /// Control saturation bound of the physical plant.
        #[arg(long)]
        cmax: f64,
        /// Physical displacement (physical-to-scaled direction).
        #[arg(long, allow_hyphen_values = true, requires = "ydot0")]
        y0: Option<f64>,
        /// Physical rate.
        #[arg(long, allow_hyphen_values = true, requires = "y0")]
        ydot0: Option<f64>,
        /// Physical control (defaults to 0).
        #[arg(long, allow_hyphen_values = true)]
        control: Option<f64>,
        /// Scaled position (scaled-to-physical direction).
        #[arg(long, allow_hyphen_values = true, requires = "v0")]
        x0: Option<f64>,
        /// Scaled velocity.
        #[arg(long, allow_hyphen_values = true, requires = "x0")]
        v0: Option<f64>,
        /// Scaled control (defaults to 0).
        #[arg(long, allow_hyphen_values = true)]
        u: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Plan {
            state,
            eps_curve,
            certificate,
            rho,
            out,
        } => commands::cmd_plan(&state, eps_curve, certificate, rho, &out),
        Command::Simulate {
            state,
            eps_curve,
            samples,
            format,
            out,
        } => commands::cmd_simulate(&state, eps_curve, samples, format, &out),
        Command::Regulate {
            state,
            eps_curve,
            dt,
            deadband,
            format,
            out,
        } => commands::cmd_regulate(&state, eps_curve, dt, deadband, format, &out),
        Command::Validate {
            state,
            eps_curve,
            samples,
            dt,
            out,
        } => commands::cmd_validate(&state, eps_curve, samples, dt, &out),
        Command::Batch {
            grid,
            eps_curve,
            validate,
            samples,
            dt,
            format,
            out,
        } => commands::cmd_batch(
            parse_grid(&grid)?,
            eps_curve,
            validate,
            samples,
            dt,
            format,
            &out,
        ),
        Command::Scale {
            inertia,
            cmax,
            y0,
            ydot0,
            control,
            x0,
            v0,
            u,
            out,
        } => commands::cmd_scale(
            &ScaleInput {
                inertia,
                cmax,
                y0,
                ydot0,
                control,
                x0,
                v0,
                u,
            },
            &out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
