use std::path::PathBuf;
use std::process::ExitCode;

use casimir_pfa::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pfa_cli::config::{OutputFormat, RunConfig};
use pfa_cli::curve::{curves_to_csv, curves_to_json, ForceCurve};
use pfa_cli::run;

/// Non-retarded dispersion forces between shaped objects, computed in the
/// extended proximity force approximation.
#[derive(Parser)]
#[command(name = "pfa", version, about)]
struct Cli {
    /// TOML run configuration (see the README for the schema)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override one config key: `section.key=value`, or `key=value` for
    /// [geometry] keys. A comma list of numbers makes a batch.
    #[arg(long = "param", global = true, value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Curve output format (default csv)
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the planar energy per area E_p(w)
    Planar {
        /// Add a column with the local log-log slope zeta(w)
        #[arg(long)]
        local_exponent: bool,
    },
    /// Sweep the force on the configured geometry
    Force {
        /// Geometry kind (overrides the config file)
        #[arg(long, value_name = "KIND")]
        geometry: Option<String>,
        /// Emit the size-independent curve: scaled force vs scaled gap
        #[arg(long)]
        universal: bool,
        /// Re-derive every point with the numerical surface integral and
        /// report the relative deviation in place of the error estimate
        #[arg(long)]
        compare_oracle: bool,
        /// Emit |F| instead of the signed force
        #[arg(long)]
        magnitude: bool,
    },
    /// Sweep a geometry correction factor or Corr(zeta, x)
    Corr {
        /// Geometry kind (overrides the config file)
        #[arg(long, value_name = "KIND", conflicts_with = "zeta")]
        geometry: Option<String>,
        /// Evaluate the kernel-exponent form Corr(zeta, x) instead
        #[arg(long)]
        zeta: Option<f64>,
    },
    /// Print the closed-form correction for every variant at one scaled gap
    Table1 {
        /// Scaled gap x to evaluate at
        #[arg(long, default_value_t = 0.1)]
        x: f64,
    },
    /// Run the acceptance checks
    Validate {
        /// Only criteria whose name contains this (or a numeric id)
        #[arg(long, value_name = "FILTER")]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<u8> {
    let mut config = RunConfig::load(cli.config.as_deref(), &cli.params)?;
    if let Some(f) = cli.format {
        config.output.format = f.into();
    }
    match cli.command {
        Command::Planar { local_exponent } => {
            let curves = run::planar_curves(&config, local_exponent)?;
            emit_curves(&config, cli.out.as_ref(), &curves)?;
            Ok(0)
        }
        Command::Force {
            geometry,
            universal,
            compare_oracle,
            magnitude,
        } => {
            if let Some(kind) = geometry {
                config.geometry.kind = kind;
            }
            config.sweep.universal |= universal;
            config.output.magnitude |= magnitude;
            let curves = run::force_curves(&config, compare_oracle)?;
            emit_curves(&config, cli.out.as_ref(), &curves)?;
            Ok(0)
        }
        Command::Corr { geometry, zeta } => {
            if let Some(kind) = geometry {
                config.geometry.kind = kind;
            }
            let curves = run::corr_curves(&config, zeta)?;
            emit_curves(&config, cli.out.as_ref(), &curves)?;
            Ok(0)
        }
        Command::Table1 { x } => {
            let text = run::table1_report(x)?;
            write_text(output_target(&config, cli.out.as_ref()), &text)?;
            Ok(0)
        }
        Command::Validate { only } => {
            let (text, code) = run::validate_report(only.as_deref());
            write_text(output_target(&config, cli.out.as_ref()), &text)?;
            Ok(code)
        }
    }
}

fn output_target(config: &RunConfig, flag: Option<&PathBuf>) -> Option<PathBuf> {
    flag.cloned()
        .or_else(|| config.output.path.as_ref().map(PathBuf::from))
}

fn emit_curves(config: &RunConfig, flag: Option<&PathBuf>, curves: &[ForceCurve]) -> Result<()> {
    let text = match config.output.format {
        OutputFormat::Csv => curves_to_csv(curves),
        OutputFormat::Json => curves_to_json(curves)?,
    };
    write_text(output_target(config, flag), &text)
}

fn write_text(target: Option<PathBuf>, text: &str) -> Result<()> {
    match target {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
