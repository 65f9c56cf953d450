//! `biomech`: lumbar loads over one stoop cycle with and without the assist,
//! plus the peak-reduction summary.

use contispine_core::biomech::reduction_report;

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::table::{Cell, ResultTable};

pub fn run(config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let section = &config.biomech;
    let report = reduction_report(
        &section.to_anthropometrics(),
        &section.to_arms(),
        section.peak_assist,
        section.cycle_duration,
        section.peak_angle_deg.to_radians(),
        section.samples,
    )?;

    let mut series = ResultTable::new(
        "biomech_timeseries.csv",
        &[
            ("t", "s"),
            ("trunk_angle", "deg"),
            ("assist_force", "N"),
            ("muscle_without", "N"),
            ("muscle_with", "N"),
            ("compression_without", "N"),
            ("compression_with", "N"),
            ("shear_without", "N"),
            ("shear_with", "N"),
            ("muscle_slack", "-"),
            ("shear_reversed", "-"),
        ],
    );
    for sample in &report.samples {
        series.push_row(vec![
            sample.t.into(),
            sample.trunk_angle.to_degrees().into(),
            sample.assist_force.into(),
            sample.without.muscle_force.into(),
            sample.with.muscle_force.into(),
            sample.without.compression_force.into(),
            sample.with.compression_force.into(),
            sample.without.shear_force.into(),
            sample.with.shear_force.into(),
            sample.with.muscle_slack.into(),
            sample.with.shear_reversed.into(),
        ]);
    }

    let mut summary = ResultTable::new(
        "biomech_summary.csv",
        &[
            ("quantity", "-"),
            ("peak_without", "N"),
            ("peak_with", "N"),
            ("reduction", "N"),
            ("reduction_percent", "%"),
        ],
    );
    for row in &report.rows {
        summary.push_row(vec![
            Cell::from(row.quantity),
            row.peak_without.into(),
            row.peak_with.into(),
            row.reduction.into(),
            row.reduction_percent.into(),
        ]);
    }

    Ok(vec![series, summary])
}
