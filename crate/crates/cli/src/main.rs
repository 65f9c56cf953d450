//! contispine: design, statics, biomechanics, steering, and control
//! simulation for a disc-chain back exoskeleton, driven by one JSON scenario
//! file and emitting plot-ready CSV tables.

mod commands;
mod config;
mod error;
mod manifest;
mod table;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::config::{effective_value, from_value};
use crate::error::{runtime_error, CliError};
use crate::manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "contispine",
    version,
    about = "Disc-chain exoskeleton models: design sweeps, tendon statics, lumbar loads, steering curves, and closed-loop force control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bend-limit design sweep, target-gap solution, and requirement checks
    Design(Common),
    /// Per-disc tendon force table with free-body residual columns
    Statics(Common),
    /// Lumbar loads over a stoop cycle, with and without the assist
    Biomech(Common),
    /// Stoop-cycle control simulation: trace and tracking metrics
    Simulate(SimulateArgs),
    /// Retraction-to-bend steering curve of the calibrated chain
    Steer(Common),
    /// One scenario run per value of a swept scalar config key
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Override one config key, e.g. --set control.cycles=2 (repeatable)
    #[arg(long = "set", value_name = "PATH=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    /// Current-map baseline without force feedback
    #[arg(long, conflicts_with = "closed_loop")]
    open_loop: bool,
    /// Cascaded force controller (the default)
    #[arg(long)]
    closed_loop: bool,
    /// Reference law: gravity or impedance
    #[arg(long, value_name = "NAME")]
    reference: Option<String>,
    /// Stoop cycles to run
    #[arg(long, value_name = "N")]
    cycles: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Dotted config key to sweep, e.g. control.plant.friction_curvature
    #[arg(long, value_name = "PATH")]
    param: Option<String>,
    /// Comma-separated values for the swept key
    #[arg(long, value_name = "V1,V2,...", value_delimiter = ',')]
    values: Vec<f64>,
    /// What each value runs: simulate or biomech
    #[arg(long, value_name = "NAME")]
    target: Option<String>,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, common, mode_sets): (&str, &Common, Vec<(&str, Value)>) = match &cli.command {
        Command::Design(common) => ("design", common, Vec::new()),
        Command::Statics(common) => ("statics", common, Vec::new()),
        Command::Biomech(common) => ("biomech", common, Vec::new()),
        Command::Steer(common) => ("steer", common, Vec::new()),
        Command::Simulate(args) => {
            let mut sets = Vec::new();
            if args.open_loop {
                sets.push(("control.controller", Value::from("open_loop_current")));
            }
            if args.closed_loop {
                sets.push(("control.controller", Value::from("closed_loop_force")));
            }
            if let Some(reference) = &args.reference {
                sets.push(("control.reference", Value::from(reference.as_str())));
            }
            if let Some(cycles) = args.cycles {
                sets.push(("control.cycles", Value::from(cycles)));
            }
            ("simulate", &args.common, sets)
        }
        Command::Sweep(args) => {
            let mut sets = Vec::new();
            if let Some(param) = &args.param {
                sets.push(("sweep.parameter", Value::from(param.as_str())));
            }
            if !args.values.is_empty() {
                sets.push(("sweep.values", Value::from(args.values.clone())));
            }
            if let Some(target) = &args.target {
                sets.push(("sweep.target", Value::from(target.as_str())));
            }
            ("sweep", &args.common, sets)
        }
    };

    let value = effective_value(&common.config, &mode_sets, &common.set)?;
    let config = from_value(value.clone())?;

    let tables = match name {
        "design" => commands::design::run(&config)?,
        "statics" => commands::statics::run(&config)?,
        "biomech" => commands::biomech::run(&config)?,
        "simulate" => commands::simulate::run(&config)?,
        "steer" => commands::steer::run(&config)?,
        "sweep" => commands::sweep::run(&value, &config)?,
        _ => unreachable!(),
    };

    let dir = Path::new(&config.run.output_dir);
    fs::create_dir_all(dir)
        .map_err(|e| runtime_error("cannot create output directory", e))?;
    let mut outputs = Vec::new();
    for table in &tables {
        let path = table.write(dir).map_err(|e| runtime_error("cannot write table", e))?;
        println!("wrote {} ({} rows)", path.display(), table.row_count());
        outputs.push(table.name.to_string());
    }
    if config.run.manifest {
        let path = RunManifest::new(name, &config, &outputs)
            .write(dir)
            .map_err(|e| runtime_error("cannot write manifest", e))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(&cli) {
        eprintln!("error: {error}");
        std::process::exit(error.exit_code());
    }
}
