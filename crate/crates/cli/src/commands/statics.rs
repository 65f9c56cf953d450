//! `statics`: closed-form tendon forces for every disc, with free-body
//! residual columns that audit the solution.
//!
//! Residuals are evaluated at the neutral configuration, where the closed
//! form balances exactly; the bend setting only foreshortens the lever arms
//! when they come from geometry. The mount is row 0; for even chains it
//! also carries the residual couple, reported in the `base_moment` column.

use contispine_core::kinematics::JointAngles;
use contispine_core::statics::{
    free_body_report, moment_arms_from_geometry, propagate_chain, TendonLoad,
};

use crate::config::{ArmsSection, ScenarioConfig};
use crate::error::CliError;
use crate::table::{Cell, ResultTable};

pub fn run(config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let section = &config.statics;
    let (cable_arm, backbone_arm) = match section.arms {
        ArmsSection::Direct { cable_arm, backbone_arm } => (cable_arm, backbone_arm),
        ArmsSection::FromGeometry => {
            let geometry = config.geometry.to_geometry()?;
            moment_arms_from_geometry(&geometry, section.per_joint_bend_deg.to_radians())?
        }
    };
    let load = TendonLoad::new(section.cable_force, cable_arm, backbone_arm)?;
    let disc_count = config.geometry.disc_count;
    let solution = propagate_chain(&load, disc_count)?;
    let report = free_body_report(&solution, &load, &JointAngles::zeros(disc_count))?;

    let even = disc_count.is_multiple_of(2);
    let mut columns = vec![
        ("disc", "-"),
        ("backbone_force", "N"),
        ("reaction_force", "N"),
        ("force_residual", "N"),
        ("moment_residual", "N*m"),
    ];
    if even {
        columns.push(("base_moment", "N*m"));
    }
    let mut table = ResultTable::new("statics.csv", &columns);
    for row in &report {
        let (backbone_force, reaction_force) = if row.disc == 0 {
            (0.0, solution.base_force)
        } else if row.disc == disc_count {
            (solution.distal_backbone_force, solution.disc_reaction_force)
        } else {
            (solution.interior_backbone_force, solution.disc_reaction_force)
        };
        let mut cells = vec![
            Cell::from(row.disc),
            backbone_force.into(),
            reaction_force.into(),
            row.force.into(),
            row.moment.into(),
        ];
        if even {
            let couple = if row.disc == 0 { solution.base_moment.unwrap_or(0.0) } else { 0.0 };
            cells.push(couple.into());
        }
        table.push_row(cells);
    }

    Ok(vec![table])
}
