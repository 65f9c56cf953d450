//! Steering cable model: routing length, retraction, and the inverse map.
//!
//! The dorsal cable passes through a hole at radius `hole_offset` on the +y
//! side of every disc (base plate included) and is modeled as straight
//! segments between consecutive holes. Pulling the cable shortens the routed
//! length and bends the chain toward the cable side; a uniform per-joint bend
//! is assumed when converting retraction to chain bend.
//!
//! The chord-segment model shortens monotonically only while the per-joint
//! bend stays below `atan(joint_spacing / hole_offset)`; past that the holes
//! start to separate again. Steering conversions therefore work on the
//! monotone branch and reject inputs beyond it.

use nalgebra::Point3;

use crate::error::{Error, Result};
use crate::kinematics::pose::{ChainConfiguration, JointAngles, LimitPolicy};
use crate::kinematics::DiscGeometry;

/// Bench datum: measured cable retraction for the reference bend.
pub const REFERENCE_RETRACTION_M: f64 = 0.0523;
/// Bench datum: chain bend produced by [`REFERENCE_RETRACTION_M`].
pub const REFERENCE_TOTAL_BEND_RAD: f64 = 100.0 * std::f64::consts::PI / 180.0;

/// Absolute tolerance on the total bend returned by [`bend_from_retraction`].
const BEND_TOLERANCE_RAD: f64 = 1e-6;
/// Iteration cap for the bisection inversion.
const MAX_BISECTION_STEPS: usize = 200;

fn hole_point(hole_offset: f64) -> Point3<f64> {
    Point3::new(0.0, -hole_offset, 0.0)
}

/// Routed cable length for a configuration: straight segments between the
/// holes of consecutive discs, base plate through the last disc.
pub fn cable_length(geometry: &DiscGeometry, angles: &JointAngles) -> Result<f64> {
    let chain = ChainConfiguration::new(geometry, angles, LimitPolicy::Enforce)?;
    let hole = hole_point(geometry.hole_offset);
    let mut previous = hole;
    let mut total = 0.0;
    for pose in &chain.poses()[1..] {
        let current = pose.transform_point(&hole);
        total += (current - previous).norm();
        previous = current;
    }
    Ok(total)
}

/// Largest total bend the retraction map can be inverted over: the per-joint
/// monotone turn of the chord-segment model, capped by the contact limit,
/// summed over the chain.
pub fn monotone_bend_ceiling(geometry: &DiscGeometry) -> Result<f64> {
    geometry.validate()?;
    let turn = (geometry.joint_spacing / geometry.hole_offset).atan();
    Ok(geometry.disc_count as f64 * turn.min(geometry.bend_limit()))
}

fn uniform_retraction(geometry: &DiscGeometry, per_joint: f64) -> Result<f64> {
    let count = geometry.disc_count;
    let straight = cable_length(geometry, &JointAngles::zeros(count))?;
    let bent = cable_length(geometry, &JointAngles::uniform_sagittal(per_joint, count))?;
    Ok(straight - bent)
}

/// Cable retraction that produces a uniform total bend, relative to neutral.
/// `total_bend` must lie on the monotone branch, `[0, monotone_bend_ceiling]`.
pub fn retraction_for_bend(geometry: &DiscGeometry, total_bend: f64) -> Result<f64> {
    let ceiling = monotone_bend_ceiling(geometry)?;
    if !total_bend.is_finite() || total_bend < 0.0 || total_bend > ceiling + 1e-12 {
        return Err(Error::OutOfRange {
            name: "total_bend",
            value: total_bend,
            min: 0.0,
            max: ceiling,
        });
    }
    uniform_retraction(geometry, total_bend / geometry.disc_count as f64)
}

/// Largest retraction the steering map covers: the shortening at the monotone
/// ceiling.
pub fn max_retraction(geometry: &DiscGeometry) -> Result<f64> {
    let ceiling = monotone_bend_ceiling(geometry)?;
    uniform_retraction(geometry, ceiling / geometry.disc_count as f64)
}

/// Invert the retraction map: total uniform bend that shortens the cable by
/// `retraction`. Bisection on the monotone branch, to within 1e-6 rad.
pub fn bend_from_retraction(geometry: &DiscGeometry, retraction: f64) -> Result<f64> {
    let limit = max_retraction(geometry)?;
    if !retraction.is_finite() || retraction < 0.0 || retraction > limit + 1e-12 {
        return Err(Error::OutOfRange {
            name: "retraction",
            value: retraction,
            min: 0.0,
            max: limit,
        });
    }
    if retraction == 0.0 {
        return Ok(0.0);
    }
    let count = geometry.disc_count as f64;
    let mut low = 0.0_f64;
    let mut high = monotone_bend_ceiling(geometry)? / count;
    for _ in 0..MAX_BISECTION_STEPS {
        if (high - low) * count <= BEND_TOLERANCE_RAD {
            break;
        }
        let mid = 0.5 * (low + high);
        if uniform_retraction(geometry, mid)? < retraction {
            low = mid;
        } else {
            high = mid;
        }
    }
    Ok(0.5 * (low + high) * count)
}

/// Fit the cable hole offset to measured `(retraction, total_bend)` pairs by
/// least squares on the chord-segment model. Gauss-Newton with a finite
/// difference jacobian and step halving; one clean sample pins the fit, more
/// samples average measurement noise.
pub fn calibrate_hole_radius(
    samples: &[(f64, f64)],
    geometry: &DiscGeometry,
) -> Result<f64> {
    geometry.validate()?;
    if samples.is_empty() {
        return Err(Error::Calibration("no samples provided".into()));
    }
    let mut bend_sq = 0.0;
    let mut cross = 0.0;
    for &(retraction, bend) in samples {
        if !retraction.is_finite() || !bend.is_finite() || retraction < 0.0 || bend < 0.0 {
            return Err(Error::Calibration(format!(
                "sample ({retraction}, {bend}) is not a physical retraction/bend pair"
            )));
        }
        bend_sq += bend * bend;
        cross += retraction * bend;
    }
    if bend_sq == 0.0 {
        return Err(Error::Calibration("samples carry no bending information".into()));
    }
    if cross <= 0.0 {
        return Err(Error::Calibration("samples show no cable shortening".into()));
    }

    let model = |offset: f64| -> Result<f64> {
        let candidate = DiscGeometry { hole_offset: offset, ..geometry.clone() };
        let mut error_sq = 0.0;
        for &(retraction, bend) in samples {
            let predicted =
                uniform_retraction(&candidate, bend / candidate.disc_count as f64)?;
            error_sq += (predicted - retraction) * (predicted - retraction);
        }
        Ok(error_sq)
    };

    // First-order model retraction = offset * total_bend seeds the fit.
    let floor = 1e-6;
    let rim = 0.999 * geometry.disc_radius;
    let mut offset = (cross / bend_sq).clamp(floor, rim);
    let mut error_sq = model(offset)?;
    for _ in 0..60 {
        let h = (1e-6 * offset).max(1e-9);
        let upper = model((offset + h).min(rim))?;
        let lower = model((offset - h).max(floor))?;
        let gradient = (upper - lower) / (2.0 * h);
        let curvature = ((upper - 2.0 * error_sq + lower) / (h * h)).max(1e-12);
        let mut step = -gradient / curvature;
        let mut improved = false;
        for _ in 0..8 {
            let candidate = (offset + step).clamp(floor, rim);
            let candidate_error = model(candidate)?;
            if candidate_error <= error_sq {
                if (candidate - offset).abs() <= 1e-12 * offset.max(1.0) {
                    return finish_calibration(candidate, geometry, floor, rim);
                }
                offset = candidate;
                error_sq = candidate_error;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    finish_calibration(offset, geometry, floor, rim)
}

fn finish_calibration(
    offset: f64,
    geometry: &DiscGeometry,
    floor: f64,
    rim: f64,
) -> Result<f64> {
    if !offset.is_finite() || offset <= floor * (1.0 + 1e-9) || offset >= rim * (1.0 - 1e-9) {
        return Err(Error::Calibration(format!(
            "fitted hole offset {offset} is not inside the disc rim of {}",
            geometry.disc_radius
        )));
    }
    Ok(offset)
}
