//! Kinematics of the stacked-disc spine segment.
//!
//! The segment is a serial chain of rigid discs joined by ball joints. Each
//! joint allows a rotation up to the contact limit set by the disc radius and
//! the inter-disc gap; a dorsal cable threaded through a hole in every disc
//! steers the chain in the sagittal plane.

pub mod design;
pub mod pose;
pub mod steer;

pub use design::{
    bend_limit_from_geometry, check_requirements, gap_for_bend_limit, rom_sweep,
    MotionRequirements, RequirementCheck, RequirementsReport, RomPoint,
};
pub use pose::{
    end_pose, joint_transform, ChainConfiguration, JointAngles, JointRotation, LimitPolicy, Pose,
};
pub use steer::{
    bend_from_retraction, cable_length, calibrate_hole_radius, max_retraction,
    monotone_bend_ceiling, retraction_for_bend, REFERENCE_RETRACTION_M, REFERENCE_TOTAL_BEND_RAD,
};

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Geometry of one disc chain. Lengths in meters, angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscGeometry {
    /// Disc radius.
    pub disc_radius: f64,
    /// Face-to-face spacing between neighboring discs at neutral.
    pub disc_gap: f64,
    /// Distance between neighboring joint centers along the chain.
    pub joint_spacing: f64,
    /// Radial offset of the cable hole from the disc center, on the dorsal
    /// side of the sagittal plane.
    pub hole_offset: f64,
    /// Number of discs in the chain (equals the number of joints; the base
    /// plate below disc 1 is not counted).
    pub disc_count: usize,
    /// Offset from the last disc frame to the chain tip, in that frame.
    pub end_offset: Vector3<f64>,
    /// Per-joint axial twist allowance. Twist is limited by cable routing
    /// rather than disc contact, so it is a separate budget.
    pub axial_limit: f64,
}

impl DiscGeometry {
    pub fn new(
        disc_radius: f64,
        disc_gap: f64,
        joint_spacing: f64,
        hole_offset: f64,
        disc_count: usize,
        end_offset: Vector3<f64>,
        axial_limit: f64,
    ) -> Result<Self> {
        let geometry = Self {
            disc_radius,
            disc_gap,
            joint_spacing,
            hole_offset,
            disc_count,
            end_offset,
            axial_limit,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("disc_radius", self.disc_radius),
            ("disc_gap", self.disc_gap),
            ("joint_spacing", self.joint_spacing),
            ("hole_offset", self.hole_offset),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidGeometry(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if self.hole_offset >= self.disc_radius {
            return Err(Error::InvalidGeometry(format!(
                "cable hole offset {} must sit inside the disc radius {}",
                self.hole_offset, self.disc_radius
            )));
        }
        if self.disc_count == 0 {
            return Err(Error::InvalidGeometry("disc_count must be at least 1".into()));
        }
        if !self.end_offset.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidGeometry("end_offset must be finite".into()));
        }
        if !self.axial_limit.is_finite() || self.axial_limit < 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "axial_limit must be non-negative, got {}",
                self.axial_limit
            )));
        }
        Ok(())
    }

    /// Contact-limited bend of one joint. Valid only for a validated geometry.
    pub fn bend_limit(&self) -> f64 {
        // asin argument is in (0, 1) whenever radius and gap are positive.
        PI - 2.0 * (self.disc_radius / (self.disc_radius + 0.5 * self.disc_gap)).asin()
    }
}

impl Default for DiscGeometry {
    /// The bench unit: twenty 70 mm discs with a 2.16 mm gap (20 deg per
    /// joint), 10 mm joint spacing, a 20 mm tip extension, and the cable hole
    /// offset fitted to the measured retraction-to-bend datum.
    fn default() -> Self {
        let mut geometry = Self {
            disc_radius: 0.07,
            disc_gap: 0.00216,
            joint_spacing: 0.01,
            hole_offset: 0.03,
            disc_count: 20,
            end_offset: Vector3::new(0.0, 0.0, 0.02),
            axial_limit: (PI / 2.0) / 20.0,
        };
        geometry.hole_offset =
            calibrate_hole_radius(&[(REFERENCE_RETRACTION_M, REFERENCE_TOTAL_BEND_RAD)], &geometry)
                .expect("reference datum calibrates a 20-disc chain");
        geometry
    }
}
