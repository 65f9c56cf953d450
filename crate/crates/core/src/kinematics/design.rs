//! Design formulas tying disc geometry to range of motion.
//!
//! Two neighboring discs pivot about the ball joint between them until their
//! rims touch; the rim-contact angle depends only on the disc radius and the
//! neutral gap. These routines size the gap for a target per-joint bend and
//! check a whole chain against motion requirements.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kinematics::DiscGeometry;

/// Contact-limited bend of one joint: `pi - 2 asin(r / (r + d/2))`.
pub fn bend_limit_from_geometry(disc_radius: f64, disc_gap: f64) -> Result<f64> {
    if !disc_radius.is_finite() || disc_radius <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "disc_radius must be positive and finite, got {disc_radius}"
        )));
    }
    if !disc_gap.is_finite() || disc_gap <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "disc_gap must be positive and finite, got {disc_gap}"
        )));
    }
    Ok(PI - 2.0 * (disc_radius / (disc_radius + 0.5 * disc_gap)).asin())
}

/// Gap that yields the requested per-joint bend limit; inverse of
/// [`bend_limit_from_geometry`].
pub fn gap_for_bend_limit(disc_radius: f64, bend_limit: f64) -> Result<f64> {
    if !disc_radius.is_finite() || disc_radius <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "disc_radius must be positive and finite, got {disc_radius}"
        )));
    }
    if !bend_limit.is_finite() || bend_limit <= 0.0 || bend_limit >= PI {
        return Err(Error::OutOfRange {
            name: "bend_limit",
            value: bend_limit,
            min: 0.0,
            max: PI,
        });
    }
    let half_open = (PI - bend_limit) / 2.0;
    Ok(2.0 * disc_radius * (1.0 / half_open.sin() - 1.0))
}

/// One grid point of a radius/gap design sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RomPoint {
    pub disc_radius: f64,
    pub disc_gap: f64,
    pub bend_limit: f64,
}

/// Evaluate the per-joint bend limit on a radius x gap grid. Rows iterate the
/// radius (outer) then the gap, both inclusive of their endpoints.
pub fn rom_sweep(
    radius_range: (f64, f64),
    gap_range: (f64, f64),
    counts: (usize, usize),
) -> Result<Vec<RomPoint>> {
    let (radius_count, gap_count) = counts;
    if radius_count == 0 || gap_count == 0 {
        return Err(Error::InvalidGeometry("sweep needs at least one sample per axis".into()));
    }
    for (name, (lo, hi)) in [("radius", radius_range), ("gap", gap_range)] {
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi < lo {
            return Err(Error::InvalidGeometry(format!(
                "{name} range [{lo}, {hi}] must be positive and ordered"
            )));
        }
    }
    let sample = |range: (f64, f64), count: usize, index: usize| {
        if count == 1 {
            range.0
        } else {
            range.0 + (range.1 - range.0) * index as f64 / (count - 1) as f64
        }
    };
    let mut points = Vec::with_capacity(radius_count * gap_count);
    for i in 0..radius_count {
        let disc_radius = sample(radius_range, radius_count, i);
        for j in 0..gap_count {
            let disc_gap = sample(gap_range, gap_count, j);
            points.push(RomPoint {
                disc_radius,
                disc_gap,
                bend_limit: bend_limit_from_geometry(disc_radius, disc_gap)?,
            });
        }
    }
    Ok(points)
}

/// Whole-chain motion targets, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionRequirements {
    pub sagittal: f64,
    pub lateral: f64,
    pub transverse: f64,
}

impl Default for MotionRequirements {
    /// Trunk motion needed for everyday bending and turning.
    fn default() -> Self {
        Self {
            sagittal: 70.0_f64.to_radians(),
            lateral: 20.0_f64.to_radians(),
            transverse: 90.0_f64.to_radians(),
        }
    }
}

/// One requirement compared against the chain's capability, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequirementCheck {
    pub name: &'static str,
    pub required: f64,
    pub capability: f64,
    pub margin: f64,
    pub satisfied: bool,
    /// Whether the limit behind this capability is enforced by disc contact.
    /// Twist is budgeted from cable routing and not enforced by contact.
    pub enforced: bool,
}

/// Requirement checks for one chain, sagittal, lateral, then transverse.
#[derive(Debug, Clone, PartialEq)]
pub struct RequirementsReport {
    pub checks: [RequirementCheck; 3],
}

impl RequirementsReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    /// True when both contact-enforced bending directions are satisfied.
    pub fn bending_satisfied(&self) -> bool {
        self.checks.iter().filter(|c| c.enforced).all(|c| c.satisfied)
    }
}

/// Compare a chain's cumulative range of motion against requirements.
pub fn check_requirements(
    geometry: &DiscGeometry,
    requirements: &MotionRequirements,
) -> Result<RequirementsReport> {
    geometry.validate()?;
    for (name, value) in [
        ("sagittal requirement", requirements.sagittal),
        ("lateral requirement", requirements.lateral),
        ("transverse requirement", requirements.transverse),
    ] {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidLoad(format!(
                "{name} must be non-negative, got {value}"
            )));
        }
    }
    let n = geometry.disc_count as f64;
    let bend_capability = n * geometry.bend_limit();
    let twist_capability = n * geometry.axial_limit;
    let check = |name, required, capability, enforced| RequirementCheck {
        name,
        required,
        capability,
        margin: capability - required,
        satisfied: capability >= required,
        enforced,
    };
    Ok(RequirementsReport {
        checks: [
            check("sagittal", requirements.sagittal, bend_capability, true),
            check("lateral", requirements.lateral, bend_capability, true),
            check("transverse", requirements.transverse, twist_capability, false),
        ],
    })
}
