//! `simulate`: run the two-rate stoop loop and emit the trace and its
//! tracking metrics.

use contispine_core::control::{simulate_stoop, tracking_metrics, TrackingMetrics};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::table::ResultTable;

/// Run the configured simulation and reduce it to tracking metrics. The
/// regressor scale is the gravity-law stiffness regardless of the active
/// reference, so metrics from different laws stay comparable.
pub fn run_metrics(config: &ScenarioConfig) -> Result<TrackingMetrics, CliError> {
    let sim = config.control.to_sim_config();
    let trace = simulate_stoop(&sim)?;
    Ok(tracking_metrics(&trace, config.control.gravity.stiffness)?)
}

pub fn metrics_table(metrics: &TrackingMetrics) -> ResultTable {
    let mut table = ResultTable::new(
        "metrics.csv",
        &[
            ("rms_error", "N"),
            ("percent_of_peak", "%"),
            ("loop_area", "N^2"),
            ("stiffness_slope", "-"),
            ("stiffness_r2", "-"),
        ],
    );
    table.push_row(vec![
        metrics.rms_error.into(),
        metrics.percent_of_peak.into(),
        metrics.loop_area.into(),
        metrics.stiffness_slope.into(),
        metrics.stiffness_r2.into(),
    ]);
    table
}

pub fn run(config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let sim = config.control.to_sim_config();
    let trace = simulate_stoop(&sim)?;
    let metrics = tracking_metrics(&trace, config.control.gravity.stiffness)?;

    let mut table = ResultTable::new(
        "trace.csv",
        &[
            ("t", "s"),
            ("trunk_angle", "deg"),
            ("force_reference", "N"),
            ("force_measured", "N"),
            ("current", "A"),
            ("motor_speed", "rad/s"),
            ("cable_payout", "m"),
        ],
    );
    for sample in &trace.samples {
        table.push_row(vec![
            sample.t.into(),
            sample.trunk.angle.to_degrees().into(),
            sample.force_reference.into(),
            sample.force_measured.into(),
            sample.current.into(),
            sample.motor_speed.into(),
            sample.cable_payout.into(),
        ]);
    }

    Ok(vec![table, metrics_table(&metrics)])
}
