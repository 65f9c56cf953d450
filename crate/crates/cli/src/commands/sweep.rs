//! `sweep`: rerun one scenario per value of a scalar config key.
//!
//! Each value is written into a copy of the effective configuration at the
//! dotted parameter path and the copy is re-parsed, so a path the schema
//! does not know is rejected the same way a bad config file is. Runs are
//! independent and execute in parallel; rows come out in input order.

use rayon::prelude::*;
use serde_json::Value;

use contispine_core::biomech::reduction_report;

use crate::commands::simulate;
use crate::config::{from_value, set_path, ScenarioConfig};
use crate::error::CliError;
use crate::table::{Cell, ResultTable};

/// Integral values are written as JSON integers so integer-typed keys such
/// as cycle counts stay sweepable; everything else stays a float.
fn json_number(value: f64) -> Value {
    if value.is_finite() && value.fract() == 0.0 && value.abs() <= 2f64.powi(53) {
        Value::from(value as i64)
    } else {
        Value::from(value)
    }
}

fn one_run(
    effective: &Value,
    path: &[String],
    value: f64,
    parameter: &str,
    target: &str,
) -> Result<Vec<Cell>, CliError> {
    let mut scenario = effective.clone();
    set_path(&mut scenario, path, json_number(value))?;
    let swept = from_value(scenario)?;
    let mut row = vec![Cell::from(parameter), Cell::Float(value)];
    match target {
        "simulate" => {
            let metrics = simulate::run_metrics(&swept)?;
            row.extend([
                Cell::Float(metrics.rms_error),
                Cell::Float(metrics.percent_of_peak),
                Cell::Float(metrics.loop_area),
                Cell::Float(metrics.stiffness_slope),
                Cell::Float(metrics.stiffness_r2),
            ]);
        }
        "biomech" => {
            let section = &swept.biomech;
            let report = reduction_report(
                &section.to_anthropometrics(),
                &section.to_arms(),
                section.peak_assist,
                section.cycle_duration,
                section.peak_angle_deg.to_radians(),
                section.samples,
            )?;
            row.extend(report.rows.iter().map(|r| Cell::Float(r.reduction)));
        }
        _ => unreachable!("target validated before the runs"),
    }
    Ok(row)
}

pub fn run(effective: &Value, config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let spec = config.sweep.as_ref().ok_or_else(|| {
        CliError::Config(
            "sweep needs a sweep section in the config or --param/--values flags".to_string(),
        )
    })?;
    if spec.values.is_empty() {
        return Err(CliError::Config("sweep needs at least one value".to_string()));
    }
    if spec.parameter.is_empty() || spec.parameter.split('.').any(str::is_empty) {
        return Err(CliError::Config(format!(
            "sweep parameter \"{}\" is not a dotted key path",
            spec.parameter
        )));
    }
    let columns: &[(&'static str, &'static str)] = match spec.target.as_str() {
        "simulate" => &[
            ("parameter", "-"),
            ("value", "-"),
            ("rms_error", "N"),
            ("percent_of_peak", "%"),
            ("loop_area", "N^2"),
            ("stiffness_slope", "-"),
            ("stiffness_r2", "-"),
        ],
        "biomech" => &[
            ("parameter", "-"),
            ("value", "-"),
            ("muscle_reduction", "N"),
            ("compression_reduction", "N"),
            ("shear_reduction", "N"),
        ],
        other => {
            return Err(CliError::Config(format!(
                "unknown sweep target \"{other}\", available: simulate, biomech"
            )))
        }
    };
    let path: Vec<String> = spec.parameter.split('.').map(str::to_string).collect();

    let rows: Vec<Result<Vec<Cell>, CliError>> = spec
        .values
        .par_iter()
        .map(|&value| one_run(effective, &path, value, &spec.parameter, &spec.target))
        .collect();

    let mut table = ResultTable::new("sweep.csv", columns);
    for row in rows {
        table.push_row(row?);
    }
    Ok(vec![table])
}
