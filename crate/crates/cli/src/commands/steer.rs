//! `steer`: the retraction-to-bend curve of the configured chain, sampled
//! from zero to the requested maximum retraction.

use contispine_core::kinematics::{bend_from_retraction, max_retraction, REFERENCE_RETRACTION_M};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::table::ResultTable;

pub fn run(config: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let geometry = config.geometry.to_geometry()?;
    let section = &config.steer;
    if section.samples < 2 {
        return Err(CliError::Config(format!(
            "steer.samples must be at least 2, got {}",
            section.samples
        )));
    }
    let physical_max = max_retraction(&geometry)?;
    let max_m = match section.max_retraction_cm {
        Some(cm) => cm / 100.0,
        None => REFERENCE_RETRACTION_M.min(physical_max),
    };

    let mut table = ResultTable::new("steer.csv", &[("retraction", "cm"), ("bend", "deg")]);
    for index in 0..section.samples {
        let retraction = max_m * index as f64 / (section.samples - 1) as f64;
        let bend = bend_from_retraction(&geometry, retraction)?;
        table.push_row(vec![(retraction * 100.0).into(), bend.to_degrees().into()]);
    }

    Ok(vec![table])
}
