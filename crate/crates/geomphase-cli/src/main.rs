//! `geomphase` — sweep harness and figure-data emitter for the geometric
//! phase gate library.
//!
//! Exit status: 0 on success, 1 on validation failure, 2 on configuration or
//! usage errors.

mod commands;
mod config;
mod validate;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{load_config, preset, NSpec, Regime, SweepConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "geomphase", version, about)]
struct Cli {
    /// Worker threads for the series kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Continuous,
    Pulsed,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Continuous => Regime::Continuous,
            RegimeArg::Pulsed => Regime::Pulsed,
        }
    }
}

#[derive(Args)]
struct ConfigSource {
    /// Path to a JSON sweep configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in figure preset.
    #[arg(long, value_parser = ["fig3", "fig4", "fig5", "fig6"])]
    preset: Option<String>,
}

impl ConfigSource {
    fn load(&self) -> anyhow::Result<(SweepConfig, Option<String>)> {
        match (&self.config, &self.preset) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                Ok((load_config(&text)?, None))
            }
            (None, Some(name)) => {
                let text = preset(name).expect("validated by clap");
                Ok((load_config(text)?, Some(name.clone())))
            }
            _ => anyhow::bail!("exactly one of --config or --preset is required"),
        }
    }
}

#[derive(Args)]
struct GateArgs {
    /// Interaction regime.
    #[arg(long, value_enum)]
    regime: RegimeArg,
    /// Interaction strength: k (continuous) or λ (pulsed).
    #[arg(long)]
    strength: f64,
    /// Pulse count (pulsed regime only).
    #[arg(long)]
    n_pulses: Option<u64>,
    /// Relative timing error η or ξ.
    #[arg(long, default_value_t = 0.0)]
    error: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the loop coefficients (c₁/d₁, c₂/d₂, c₃/d₃) of one gate.
    Coeffs {
        #[command(flatten)]
        gate: GateArgs,
        /// Output directory (writes coeffs.json); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the phase-space trajectory as `x,p` CSV.
    Trajectory {
        #[command(flatten)]
        gate: GateArgs,
        /// Arc samples (continuous regime).
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Output directory (writes trajectory.csv); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a fidelity/purity sweep over the (error, N) grid.
    Sweep {
        #[command(flatten)]
        source: ConfigSource,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the Husimi Q-function at one (error, N) point.
    Qfunc {
        #[command(flatten)]
        source: ConfigSource,
        /// Relative timing error of the point.
        #[arg(long, default_value_t = 0.0)]
        error: f64,
        /// Rescaling factor: positive integer or "inf".
        #[arg(long, default_value = "1")]
        n: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the self-check suites against the independent oracles.
    Validate {
        /// Suites to run (default: all).
        #[arg(long, value_parser = ["geometry", "unification", "oracle-unitary", "oracle-dissipative", "all"], default_value = "all")]
        suite: String,
    },
}

fn parse_nspec(s: &str) -> anyhow::Result<NSpec> {
    if s == "inf" {
        return Ok(NSpec::Infinity);
    }
    let n: u64 = s.parse().context("N must be a positive integer or \"inf\"")?;
    Ok(NSpec::Finite(n))
}

fn emit(out: Option<&PathBuf>, file_name: &str, body: &str) -> anyhow::Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(file_name), body)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    #[cfg(feature = "parallel")]
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.threads;

    match cli.command {
        Command::Coeffs { gate, out } => {
            let body =
                commands::coeffs_json(gate.regime.into(), gate.strength, gate.n_pulses, gate.error)?;
            emit(out.as_ref(), "coeffs.json", &body)?;
            Ok(true)
        }
        Command::Trajectory { gate, samples, out } => {
            let body = commands::trajectory_csv(
                gate.regime.into(),
                gate.strength,
                gate.n_pulses,
                gate.error,
                samples,
            )?;
            emit(out.as_ref(), "trajectory.csv", &body)?;
            Ok(true)
        }
        Command::Sweep { source, out } => {
            let (cfg, preset_name) = source.load()?;
            commands::run_sweep(&cfg, preset_name.as_deref(), &out)?;
            Ok(true)
        }
        Command::Qfunc { source, error, n, out } => {
            let (cfg, preset_name) = source.load()?;
            let n = parse_nspec(&n)?;
            commands::run_qfunc(&cfg, preset_name.as_deref(), error, n, &out)?;
            Ok(true)
        }
        Command::Validate { suite } => {
            let suites: Vec<&str> = if suite == "all" {
                vec!["geometry", "unification", "oracle-unitary", "oracle-dissipative"]
            } else {
                vec![suite.as_str()]
            };
            Ok(validate::run(&suites))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
