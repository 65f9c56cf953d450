//! Rigid-body poses of the disc chain.
//!
//! Frames: z along the chain axis, x lateral, and the steering cable on the
//! -y side, so positive sagittal rotation bends toward the cable. Each joint
//! applies an intrinsic x-y-z rotation at the joint center followed by a
//! translation along the rotated z axis, so disc k's frame is
//! `parent * Rx(sagittal) * Ry(lateral) * Rz(axial) * Tz(spacing)`.

use nalgebra::{Isometry3, Matrix4, Point3, Translation3, UnitQuaternion, Vector3};

use crate::error::{Error, Result};
use crate::kinematics::DiscGeometry;

/// Slack when comparing a rotation against its limit, so configurations
/// constructed exactly at the limit are accepted.
const LIMIT_SLACK: f64 = 1e-9;

/// One joint's rotation, radians: sagittal about x, lateral about y, axial
/// twist about z.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointRotation {
    pub sagittal: f64,
    pub lateral: f64,
    pub axial: f64,
}

impl JointRotation {
    pub fn new(sagittal: f64, lateral: f64, axial: f64) -> Self {
        Self { sagittal, lateral, axial }
    }

    /// Angle between the rotated disc axis and the neutral axis. Twist does
    /// not tilt the axis, so only the sagittal and lateral terms contribute.
    pub fn bend_deviation(&self) -> f64 {
        (self.sagittal.cos() * self.lateral.cos()).clamp(-1.0, 1.0).acos()
    }
}

/// Per-joint rotations for a whole chain, base to tip.
#[derive(Debug, Clone, PartialEq)]
pub struct JointAngles(Vec<JointRotation>);

impl JointAngles {
    pub fn new(rotations: Vec<JointRotation>) -> Self {
        Self(rotations)
    }

    pub fn zeros(count: usize) -> Self {
        Self(vec![JointRotation::default(); count])
    }

    /// The same sagittal rotation at every joint: the shape a single dorsal
    /// cable produces when all joints share the load evenly.
    pub fn uniform_sagittal(per_joint: f64, count: usize) -> Self {
        Self(vec![JointRotation::new(per_joint, 0.0, 0.0); count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[JointRotation] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, JointRotation> {
        self.0.iter()
    }

    /// True when every joint moves in the sagittal plane only.
    pub fn is_planar_sagittal(&self) -> bool {
        self.0.iter().all(|r| r.lateral == 0.0 && r.axial == 0.0)
    }
}

/// Pose of a frame relative to the chain base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose(Isometry3<f64>);

impl Pose {
    pub fn identity() -> Self {
        Self(Isometry3::identity())
    }

    pub fn from_isometry(isometry: Isometry3<f64>) -> Self {
        Self(isometry)
    }

    pub fn isometry(&self) -> &Isometry3<f64> {
        &self.0
    }

    pub fn rotation(&self) -> &UnitQuaternion<f64> {
        &self.0.rotation
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.0.translation.vector
    }

    pub fn to_homogeneous(&self) -> Matrix4<f64> {
        self.0.to_homogeneous()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    pub fn transform_point(&self, point: &Point3<f64>) -> Point3<f64> {
        self.0 * point
    }
}

impl std::ops::Mul for Pose {
    type Output = Pose;

    fn mul(self, rhs: Pose) -> Pose {
        Pose(self.0 * rhs.0)
    }
}

/// Transform from a disc frame to its parent: intrinsic x-y-z rotation at the
/// joint, then `spacing` along the rotated z axis.
pub fn joint_transform(rotation: &JointRotation, spacing: f64) -> Pose {
    let orientation = UnitQuaternion::from_axis_angle(&Vector3::x_axis(), rotation.sagittal)
        * UnitQuaternion::from_axis_angle(&Vector3::y_axis(), rotation.lateral)
        * UnitQuaternion::from_axis_angle(&Vector3::z_axis(), rotation.axial);
    let offset = orientation * Vector3::new(0.0, 0.0, spacing);
    Pose(Isometry3::from_parts(Translation3::from(offset), orientation))
}

/// Whether to reject configurations that violate the joint limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitPolicy {
    Enforce,
    Ignore,
}

/// A chain posture with every disc pose resolved relative to the base.
#[derive(Debug, Clone)]
pub struct ChainConfiguration {
    geometry: DiscGeometry,
    angles: JointAngles,
    poses: Vec<Pose>,
}

impl ChainConfiguration {
    pub fn new(
        geometry: &DiscGeometry,
        angles: &JointAngles,
        limits: LimitPolicy,
    ) -> Result<Self> {
        geometry.validate()?;
        if angles.len() != geometry.disc_count {
            return Err(Error::AngleCountMismatch {
                found: angles.len(),
                expected: geometry.disc_count,
            });
        }
        if limits == LimitPolicy::Enforce {
            let bend_limit = geometry.bend_limit();
            for (index, rotation) in angles.iter().enumerate() {
                let deviation = rotation.bend_deviation();
                if deviation > bend_limit + LIMIT_SLACK {
                    return Err(Error::JointLimitExceeded {
                        joint: index + 1,
                        found_deg: deviation.to_degrees(),
                        limit_deg: bend_limit.to_degrees(),
                    });
                }
                if rotation.axial.abs() > geometry.axial_limit + LIMIT_SLACK {
                    return Err(Error::JointLimitExceeded {
                        joint: index + 1,
                        found_deg: rotation.axial.abs().to_degrees(),
                        limit_deg: geometry.axial_limit.to_degrees(),
                    });
                }
            }
        }
        let mut poses = Vec::with_capacity(angles.len() + 1);
        poses.push(Pose::identity());
        let mut current = Pose::identity();
        for rotation in angles.iter() {
            current = current * joint_transform(rotation, geometry.joint_spacing);
            poses.push(current);
        }
        Ok(Self {
            geometry: geometry.clone(),
            angles: angles.clone(),
            poses,
        })
    }

    pub fn geometry(&self) -> &DiscGeometry {
        &self.geometry
    }

    pub fn angles(&self) -> &JointAngles {
        &self.angles
    }

    /// Pose of disc `index`; index 0 is the base plate.
    pub fn disc_pose(&self, index: usize) -> &Pose {
        &self.poses[index]
    }

    /// All poses, base plate first, one per disc after it.
    pub fn poses(&self) -> &[Pose] {
        &self.poses
    }

    /// Pose of the chain tip: the last disc frame advanced by the end offset.
    pub fn tip_pose(&self) -> Pose {
        let last = self.poses[self.poses.len() - 1];
        last * Pose(Isometry3::from_parts(
            Translation3::from(self.geometry.end_offset),
            UnitQuaternion::identity(),
        ))
    }
}

/// Tip pose of a chain in one call.
pub fn end_pose(
    geometry: &DiscGeometry,
    angles: &JointAngles,
    limits: LimitPolicy,
) -> Result<Pose> {
    ChainConfiguration::new(geometry, angles, limits).map(|chain| chain.tip_pose())
}
