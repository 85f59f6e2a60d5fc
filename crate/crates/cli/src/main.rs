mod compare;
mod config;
mod figures;
mod sweep;
mod table;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eit_memory::readout::{noise_power, stored_squeezing_after, ReadoutConfig, ReadoutReport, ReadoutWarning};
use eit_memory::spectra::Method;
use eit_memory::QuadratureConfig;

use crate::figures::Figure;

#[derive(Parser, Debug)]
#[command(name = "eit-memory", version, about = "Squeezing transfer into a cavity-coupled atomic spin: figure data, sweeps and oracle checks")]
struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Scenario file (TOML, one table per scenario).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative tolerance of the frequency-integration route.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    /// Seed of the random comparison batch.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the CSV data behind one figure.
    Figure {
        #[arg(value_enum)]
        id: Figure,
    },
    /// Compare integration, Lyapunov and closed-form efficiencies; exits 1 on any failure.
    Compare {
        /// Size of the seeded random batch appended to the scenarios.
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
    /// Run the sweeps declared in the scenario file.
    Sweep {
        #[arg(long, value_enum, default_value_t = MethodArg::Lyapunov)]
        method: MethodArg,
        /// Only run this scenario.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Evaluate the analyzer noise power for one readout setting.
    Readout {
        /// Integration time γ̃0·T₀.
        #[arg(long)]
        a: f64,
        /// Analyzer bandwidth Δω/γ̃0; the Fourier limit 2π/a when omitted.
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        zeta: f64,
        #[arg(long, default_value_t = 0.5)]
        r_at: f64,
        #[arg(long = "C", default_value_t = 100.0)]
        cooperativity: f64,
        #[arg(long = "gamma-E", default_value_t = 15.0)]
        gamma_e: f64,
        #[arg(long, default_value_t = 1e-3)]
        sigma: f64,
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        /// γ̃0·t since the pump was switched back on.
        #[arg(long, default_value_t = 0.0)]
        t_delay: f64,
        /// γ0 times the pump-off storage interval before readout.
        #[arg(long, default_value_t = 0.0)]
        storage: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lyapunov,
    Integration,
}

#[derive(Serialize)]
struct ReadoutOutput {
    config: ReadoutConfig,
    report: ReadoutReport,
    warnings: Vec<ReadoutWarning>,
}

fn quadrature(cli: &Cli) -> QuadratureConfig {
    QuadratureConfig { rel_tol: cli.tolerance, ..QuadratureConfig::default() }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let scenarios = match &cli.config {
        Some(path) => Some(config::load_scenarios(path)?),
        None => None,
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Figure { id } => {
            table::emit(&figures::run_figure(*id)?.render(), out)?;
            Ok(true)
        }
        Command::Compare { random } => {
            let mut points = scenarios.unwrap_or_else(compare::builtin_scenarios);
            points.extend(compare::random_scenarios(*random, cli.seed));
            let report = compare::run_compare(&points, cli.seed, &quadrature(&cli));
            for row in report.rows.iter().filter(|r| !r.pass) {
                eprintln!("comparison failed: {}", serde_json::to_string(row)?);
            }
            table::emit(&(serde_json::to_string_pretty(&report)? + "\n"), out)?;
            Ok(report.all_pass)
        }
        Command::Sweep { method, scenario } => {
            let all = scenarios.context("sweep needs --config")?;
            let selected: Vec<_> = match scenario {
                Some(name) => {
                    let found: Vec<_> = all.into_iter().filter(|s| &s.name == name).collect();
                    anyhow::ensure!(!found.is_empty(), "no scenario named `{name}`");
                    found
                }
                None => all,
            };
            let method = match method {
                MethodArg::Lyapunov => Method::Lyapunov,
                MethodArg::Integration => Method::Integration(quadrature(&cli)),
            };
            table::emit(&sweep::run_sweeps(&selected, method)?.render(), out)?;
            Ok(true)
        }
        Command::Readout { a, b, zeta, r_at, cooperativity, gamma_e, sigma, rho, t_delay, storage } => {
            let config = ReadoutConfig {
                a: *a,
                b: b.unwrap_or(2.0 * PI / a),
                zeta: *zeta,
                r_at: stored_squeezing_after(*r_at, *storage),
                cooperativity: *cooperativity,
                gamma_e: *gamma_e,
                sigma: *sigma,
                rho: *rho,
                t_delay: *t_delay,
            };
            let warnings = config.validate()?;
            let report = noise_power(&config)?;
            let text = serde_json::to_string_pretty(&ReadoutOutput { config, report, warnings })? + "\n";
            table::emit(&text, out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
