//! `design`: bend-limit landscape, the gap that hits the target bend, and
//! the motion requirement checks for the configured chain.

use contispine_core::kinematics::{check_requirements, gap_for_bend_limit, rom_sweep};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::table::{Cell, ResultTable};

pub fn run(config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    // Design outputs never route the cable, so the hole needs no calibration.
    let geometry = config.geometry.to_uncalibrated_geometry()?;
    let design = &config.design;

    let points = rom_sweep(
        (design.radius_range[0], design.radius_range[1]),
        (design.gap_range[0], design.gap_range[1]),
        (design.radius_steps, design.gap_steps),
    )?;
    let mut sweep = ResultTable::new(
        "design_sweep.csv",
        &[("disc_radius", "m"), ("disc_gap", "m"), ("bend_limit", "deg")],
    );
    for point in &points {
        sweep.push_row(vec![
            point.disc_radius.into(),
            point.disc_gap.into(),
            point.bend_limit.to_degrees().into(),
        ]);
    }

    let target = design.target_bend_limit_deg.to_radians();
    let gap_for_target = gap_for_bend_limit(geometry.disc_radius, target)?;
    let mut identity = ResultTable::new(
        "geometry.csv",
        &[
            ("disc_radius", "m"),
            ("disc_gap", "m"),
            ("bend_limit", "deg"),
            ("target_bend_limit", "deg"),
            ("gap_for_target", "m"),
        ],
    );
    identity.push_row(vec![
        geometry.disc_radius.into(),
        geometry.disc_gap.into(),
        geometry.bend_limit().to_degrees().into(),
        design.target_bend_limit_deg.into(),
        gap_for_target.into(),
    ]);

    let report = check_requirements(&geometry, &config.requirements.to_requirements())?;
    let mut requirements = ResultTable::new(
        "requirements.csv",
        &[
            ("requirement", "-"),
            ("required", "deg"),
            ("capability", "deg"),
            ("margin", "deg"),
            ("enforced", "-"),
            ("pass", "-"),
        ],
    );
    for check in &report.checks {
        requirements.push_row(vec![
            Cell::from(check.name),
            check.required.to_degrees().into(),
            check.capability.to_degrees().into(),
            check.margin.to_degrees().into(),
            check.enforced.into(),
            check.satisfied.into(),
        ]);
    }

    Ok(vec![sweep, identity, requirements])
}
