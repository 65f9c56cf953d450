//! Tendon statics of the disc stack in the sagittal plane.
//!
//! Model: the steering cable leaves the distal disc through its hole and runs
//! nearly parallel to the chain axis, so it loads that disc with an axial pull
//! at a transverse offset `cable_arm` from the disc center. Neighboring discs
//! exchange a transverse backbone contact force through their centers, each a
//! distance `backbone_arm` from the ball joint, and the ball joints carry the
//! remaining reaction. Solving each disc in turn gives closed-form forces:
//! the reaction leaves every joint at the same angle to the chain axis, the
//! transverse contact doubles on interior discs and alternates sides, and the
//! mount sees the same reaction magnitude as every joint.
//!
//! [`free_body_report`] rebuilds the force systems disc by disc and sums
//! forces and moments, so any inconsistency in a solution shows up as a
//! nonzero residual. The closed form balances a neutral (straight) chain
//! exactly; evaluating the report on a bent chain shows how far the neutral
//! solution drifts, which is the intended reading, not an error.

use crate::error::{Error, Result};
use crate::kinematics::JointAngles;

/// Cable load and lever arms for one chain, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TendonLoad {
    /// Cable tension, N.
    pub cable_force: f64,
    /// Transverse offset of the cable hole from the disc center, m.
    pub cable_arm: f64,
    /// Distance from a ball joint to its disc center, m (half the joint
    /// spacing when the arms come from chain geometry).
    pub backbone_arm: f64,
}

impl TendonLoad {
    pub fn new(cable_force: f64, cable_arm: f64, backbone_arm: f64) -> Result<Self> {
        if !cable_force.is_finite() || cable_force < 0.0 {
            return Err(Error::InvalidLoad(format!(
                "cable_force must be non-negative and finite, got {cable_force}"
            )));
        }
        for (name, value) in [("cable_arm", cable_arm), ("backbone_arm", backbone_arm)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidLoad(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(Self { cable_force, cable_arm, backbone_arm })
    }
}

/// Effective lever arms for a uniform per-joint bend: the neutral arms (hole
/// offset, half the joint spacing) foreshortened by the half-bend. The ratio
/// is bend-invariant, so the reaction angle does not change with bend.
pub fn moment_arms_from_geometry(
    geometry: &crate::kinematics::DiscGeometry,
    per_joint_bend: f64,
) -> Result<(f64, f64)> {
    geometry.validate()?;
    let limit = geometry.bend_limit();
    if !per_joint_bend.is_finite() || per_joint_bend.abs() > limit {
        return Err(Error::OutOfRange {
            name: "per_joint_bend",
            value: per_joint_bend,
            min: -limit,
            max: limit,
        });
    }
    let foreshorten = (per_joint_bend / 2.0).cos();
    Ok((
        geometry.hole_offset * foreshorten,
        0.5 * geometry.joint_spacing * foreshorten,
    ))
}

/// Force balance of the distal disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistalBalance {
    /// Angle between the joint reaction and the chain axis, rad.
    pub reaction_angle: f64,
    /// Transverse backbone contact force on the distal disc, N.
    pub backbone_force: f64,
    /// Ball joint reaction magnitude, N.
    pub reaction_force: f64,
}

/// Balance the distal disc: cable pull at the hole against the backbone
/// contact at the center and the joint reaction.
pub fn distal_disc_balance(load: &TendonLoad) -> DistalBalance {
    let ratio = load.cable_arm / load.backbone_arm;
    DistalBalance {
        reaction_angle: ratio.atan(),
        backbone_force: load.cable_force * ratio,
        reaction_force: load.cable_force * (1.0 + ratio * ratio).sqrt(),
    }
}

/// Closed-form forces for the whole chain under one cable load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TendonSolution {
    /// Angle between every joint reaction and the chain axis, rad.
    pub reaction_angle: f64,
    /// Transverse backbone force on the distal disc, N.
    pub distal_backbone_force: f64,
    /// Transverse backbone force on each interior disc, N. Twice the distal
    /// value; the side alternates disc to disc.
    pub interior_backbone_force: f64,
    /// Reaction magnitude at every ball joint, N.
    pub disc_reaction_force: f64,
    /// Force on the mount, N. Same magnitude as the joint reactions.
    pub base_force: f64,
    /// Mounting moment, N*m. The alternating transverse pattern cancels pair
    /// by pair, so a couple remains only for even disc counts.
    pub base_moment: Option<f64>,
    pub disc_count: usize,
}

/// Propagate the distal balance down a chain of `disc_count` discs.
pub fn propagate_chain(load: &TendonLoad, disc_count: usize) -> Result<TendonSolution> {
    if disc_count < 2 {
        return Err(Error::ChainTooShort { found: disc_count, minimum: 2 });
    }
    let distal = distal_disc_balance(load);
    let (base_force, base_moment) = base_reaction(load, disc_count)?;
    Ok(TendonSolution {
        reaction_angle: distal.reaction_angle,
        distal_backbone_force: distal.backbone_force,
        interior_backbone_force: 2.0 * distal.backbone_force,
        disc_reaction_force: distal.reaction_force,
        base_force,
        base_moment,
        disc_count,
    })
}

/// Mount loading: force magnitude, and the residual couple for even chains.
pub fn base_reaction(load: &TendonLoad, disc_count: usize) -> Result<(f64, Option<f64>)> {
    if disc_count < 2 {
        return Err(Error::ChainTooShort { found: disc_count, minimum: 2 });
    }
    let distal = distal_disc_balance(load);
    let moment = if disc_count.is_multiple_of(2) {
        Some(2.0 * distal.reaction_force * load.backbone_arm)
    } else {
        None
    };
    Ok((distal.reaction_force, moment))
}

/// Residual force and moment on one free body, N and N*m. Disc 0 is the mount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscResidual {
    pub disc: usize,
    pub force: f64,
    pub moment: f64,
}

/// Rebuild every disc's force system from a solution and sum it.
///
/// Works in the sagittal plane: coordinates are (axial, toward-cable), disc
/// k's axis accumulates the per-joint rotations up to joint k, joints sit
/// `2 * backbone_arm` apart along each disc's own axis. The mount row checks
/// the anchor force against the first joint reaction; the anchor acts through
/// that joint, so its moment row is zero by construction and the stated
/// mounting couple for even chains is not part of this check.
pub fn free_body_report(
    solution: &TendonSolution,
    load: &TendonLoad,
    angles: &JointAngles,
) -> Result<Vec<DiscResidual>> {
    let n = solution.disc_count;
    if angles.len() != n {
        return Err(Error::AngleCountMismatch { found: angles.len(), expected: n });
    }
    if !angles.is_planar_sagittal() {
        return Err(Error::NotPlanar(
            "free-body check is defined for sagittal-plane configurations".into(),
        ));
    }

    // Orientation of disc k's axis, k = 0 (mount) through n.
    let mut heading = Vec::with_capacity(n + 1);
    heading.push(0.0);
    let mut accumulated = 0.0;
    for rotation in angles.iter() {
        accumulated += rotation.sagittal;
        heading.push(accumulated);
    }
    let axis = |k: usize| (heading[k].cos(), heading[k].sin());
    let transverse = |k: usize| (-heading[k].sin(), heading[k].cos());

    // Joint positions: J_1 at the origin, J_{k+1} up disc k's axis.
    let pitch = 2.0 * load.backbone_arm;
    let mut joint = vec![(0.0, 0.0); n + 2];
    for k in 1..=n {
        let (au, aw) = axis(k);
        joint[k + 1] = (joint[k].0 + pitch * au, joint[k].1 + pitch * aw);
    }

    let alpha = solution.reaction_angle;
    // Transverse sign of the reaction at joint k, alternating up from the
    // distal disc where the cable side sets it positive.
    let side = |k: usize| if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
    let reaction = |k: usize| {
        let (au, aw) = axis(k);
        let (cu, cw) = transverse(k);
        let axial = solution.disc_reaction_force * alpha.cos();
        let lateral = side(k) * solution.disc_reaction_force * alpha.sin();
        (axial * au + lateral * cu, axial * aw + lateral * cw)
    };

    type PointLoad = ((f64, f64), (f64, f64));
    let cross = |arm: (f64, f64), force: (f64, f64)| arm.0 * force.1 - arm.1 * force.0;
    let sum = |pivot: (f64, f64), terms: &[PointLoad]| {
        let mut force = (0.0, 0.0);
        let mut moment = 0.0;
        for &(point, f) in terms {
            force.0 += f.0;
            force.1 += f.1;
            moment += cross((point.0 - pivot.0, point.1 - pivot.1), f);
        }
        DiscResidual { disc: 0, force: (force.0.powi(2) + force.1.powi(2)).sqrt(), moment: moment.abs() }
    };

    let mut report = Vec::with_capacity(n + 1);

    // Mount: the anchor force (solved in the mount frame) against the first
    // joint reaction, both acting through joint 1.
    {
        let r1 = reaction(1);
        let anchor_axial = solution.base_force * alpha.cos();
        let anchor_lateral = side(1) * solution.base_force * alpha.sin();
        let anchor = (anchor_axial, anchor_lateral);
        let mut row = sum(
            joint[1],
            &[(joint[1], (-r1.0, -r1.1)), (joint[1], anchor)],
        );
        row.disc = 0;
        report.push(row);
    }

    for k in 1..=n {
        let (au, aw) = axis(k);
        let (cu, cw) = transverse(k);
        let center = (joint[k].0 + load.backbone_arm * au, joint[k].1 + load.backbone_arm * aw);
        let mut row = if k == n {
            let hole = (center.0 + load.cable_arm * cu, center.1 + load.cable_arm * cw);
            let cable = (-load.cable_force * au, -load.cable_force * aw);
            let backbone = (
                -solution.distal_backbone_force * cu,
                -solution.distal_backbone_force * cw,
            );
            sum(
                joint[k],
                &[(hole, cable), (center, backbone), (joint[k], reaction(k))],
            )
        } else {
            let backbone_force = -side(k) * solution.interior_backbone_force;
            let backbone = (backbone_force * cu, backbone_force * cw);
            let upper = reaction(k + 1);
            sum(
                joint[k],
                &[
                    (joint[k], reaction(k)),
                    (joint[k + 1], (-upper.0, -upper.1)),
                    (center, backbone),
                ],
            )
        };
        row.disc = k;
        report.push(row);
    }
    Ok(report)
}

/// Largest force and moment residual across all free bodies.
pub fn free_body_residuals(
    solution: &TendonSolution,
    load: &TendonLoad,
    angles: &JointAngles,
) -> Result<(f64, f64)> {
    let report = free_body_report(solution, load, angles)?;
    let force = report.iter().map(|r| r.force).fold(0.0, f64::max);
    let moment = report.iter().map(|r| r.moment).fold(0.0, f64::max);
    Ok((force, moment))
}
