mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use djspin::model::DeviceLabel;

use commands::{ScanGrid, TimeUnit};
use config::ConfigArgs;
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "djspin",
    version,
    about = "Spin-1/2 particle exchange-coupled to two anisotropic spins"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of each total-m sector
    Spectrum {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Populations over time (and Bloch data when bloch_pair is set) as CSV
    Evolve {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        time_unit: TimeUnit,
    },
    /// Like evolve, but bloch_pair is required
    Bloch {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        time_unit: TimeUnit,
    },
    /// Peak transition probability over a (d, j_k) grid
    Scan {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long = "d_min", allow_hyphen_values = true)]
        d_min: f64,
        #[arg(long = "d_max", allow_hyphen_values = true)]
        d_max: f64,
        #[arg(long = "d_steps")]
        d_steps: usize,
        #[arg(long = "jk_min", allow_hyphen_values = true)]
        jk_min: f64,
        #[arg(long = "jk_max", allow_hyphen_values = true)]
        jk_max: f64,
        #[arg(long = "jk_steps")]
        jk_steps: usize,
        /// Initial state of the transition
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        /// Target state of the transition
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resonance conditions of the spin-1 model
    Table1 {
        /// Also evaluate J_R and Ω_R at this anisotropy
        #[arg(long, allow_hyphen_values = true)]
        d: Option<f64>,
    },
    /// Run the built-in oracle checks
    Verify {
        #[arg(long)]
        json: bool,
        /// Flip the sign of Δ_K in the expected block (the check must fail)
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum { config, out } => {
            let cfg = config.resolve()?;
            commands::write_output(out.as_deref(), &commands::spectrum(&cfg)?)
        }
        Command::Evolve {
            config,
            out,
            time_unit,
        } => {
            let cfg = config.resolve()?;
            commands::write_output(out.as_deref(), &commands::evolve(&cfg, time_unit)?)
        }
        Command::Bloch {
            config,
            out,
            time_unit,
        } => {
            let cfg = config.resolve()?;
            if cfg.bloch_pair.is_none() {
                return Err(CliError::Config(
                    "field `bloch_pair`: required by `bloch`".into(),
                ));
            }
            commands::write_output(out.as_deref(), &commands::evolve(&cfg, time_unit)?)
        }
        Command::Scan {
            config,
            d_min,
            d_max,
            d_steps,
            jk_min,
            jk_max,
            jk_steps,
            from,
            to,
            jobs,
            out,
        } => {
            let cfg = config.resolve()?;
            let pair = (from.parse::<DeviceLabel>()?, to.parse::<DeviceLabel>()?);
            let grid = ScanGrid {
                d_min,
                d_max,
                d_steps,
                jk_min,
                jk_max,
                jk_steps,
            };
            commands::write_output(
                out.as_deref(),
                &commands::scan(&cfg, &grid, pair, jobs.max(1))?,
            )
        }
        Command::Table1 { d } => {
            commands::write_output(None, &commands::table1(djspin::SpinQuantum::ONE, d)?)
        }
        Command::Verify {
            json,
            inject_sign_error,
        } => {
            let (text, passed) = commands::verify(json, inject_sign_error);
            commands::write_output(None, &text)?;
            if passed {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("djspin: {e}");
            }
            e.exit_code()
        }
    }
}
