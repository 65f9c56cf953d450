//! Static lumbar load model for stooped lifting.
//!
//! The trunk is a rigid lever pivoting at the lumbosacral joint, flexed
//! `trunk_angle` from vertical. Upper-body weight acts partway up the trunk,
//! the hand load at the top plus a fixed horizontal reach, the extensor
//! muscles pull along the trunk a short distance behind the joint, and the
//! exoskeleton applies an assistive force at its own (much longer) moment
//! arm. Moment balance about the joint gives the extensor force; resolving
//! along and across the trunk gives joint compression and shear.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Standard gravity used throughout the load model, m/s^2.
pub const GRAVITY_M_S2: f64 = 9.81;

/// Body and task parameters, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anthropometrics {
    /// Mass of the trunk, head, and arms, kg.
    pub body_mass: f64,
    /// Mass held in the hands, kg.
    pub load_mass: f64,
    /// Lumbosacral joint to shoulder distance, m.
    pub trunk_length: f64,
    /// Fraction of the trunk length at which the upper-body weight acts.
    pub body_lever_ratio: f64,
    /// Horizontal reach of the hands past the shoulders, m.
    pub hand_offset: f64,
}

impl Default for Anthropometrics {
    fn default() -> Self {
        Self {
            body_mass: 41.0,
            load_mass: 15.0,
            trunk_length: 0.5,
            body_lever_ratio: 0.5,
            hand_offset: 0.25,
        }
    }
}

impl Anthropometrics {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("body_mass", self.body_mass), ("load_mass", self.load_mass)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidLoad(format!(
                    "{name} must be non-negative, got {value}"
                )));
            }
        }
        for (name, value) in [
            ("trunk_length", self.trunk_length),
            ("hand_offset", self.hand_offset),
        ] {
            if !value.is_finite() || value < 0.0 || (name == "trunk_length" && value == 0.0) {
                return Err(Error::InvalidLoad(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !self.body_lever_ratio.is_finite()
            || !(0.0..=1.0).contains(&self.body_lever_ratio)
        {
            return Err(Error::InvalidLoad(format!(
                "body_lever_ratio must lie in [0, 1], got {}",
                self.body_lever_ratio
            )));
        }
        Ok(())
    }
}

/// Moment arms of the two forces that act about the lumbosacral joint, m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentArms {
    /// Extensor muscle moment arm.
    pub muscle_arm: f64,
    /// Exoskeleton assist moment arm.
    pub assist_arm: f64,
}

impl Default for MomentArms {
    fn default() -> Self {
        Self { muscle_arm: 0.05, assist_arm: 0.30 }
    }
}

impl MomentArms {
    pub fn validate(&self) -> Result<()> {
        if !self.muscle_arm.is_finite() || self.muscle_arm <= 0.0 {
            return Err(Error::InvalidLoad(format!(
                "muscle_arm must be positive, got {}",
                self.muscle_arm
            )));
        }
        if !self.assist_arm.is_finite() || self.assist_arm < 0.0 {
            return Err(Error::InvalidLoad(format!(
                "assist_arm must be non-negative, got {}",
                self.assist_arm
            )));
        }
        Ok(())
    }
}

/// Lumbosacral loading at one posture, N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpineForces {
    /// Extensor muscle force. Negative means the assist overpowers gravity
    /// and the extensors would go slack.
    pub muscle_force: f64,
    /// Compression along the trunk axis at the joint.
    pub compression_force: f64,
    /// Anterior shear across the joint.
    pub shear_force: f64,
    /// True when the extensors would need to push, which a muscle cannot do.
    pub muscle_slack: bool,
    /// True when the assist reverses the shear direction.
    pub shear_reversed: bool,
}

/// Trunk flexion state in the sagittal plane: angle from vertical, rad, and
/// its time derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrunkState {
    pub angle: f64,
    pub velocity: f64,
    pub acceleration: f64,
}

/// Quasi-static lumbar forces at one trunk angle under one assist force.
///
/// The shear row is computed as the gravity shear minus the assist in a
/// single subtraction, so for any fixed angle the assisted and unassisted
/// shear differ by exactly the assist force, bit for bit.
pub fn lumbar_forces(
    anthropometrics: &Anthropometrics,
    arms: &MomentArms,
    trunk_angle: f64,
    assist_force: f64,
) -> Result<SpineForces> {
    anthropometrics.validate()?;
    arms.validate()?;
    if !trunk_angle.is_finite() || !(0.0..=FRAC_PI_2).contains(&trunk_angle) {
        return Err(Error::OutOfRange {
            name: "trunk_angle",
            value: trunk_angle,
            min: 0.0,
            max: FRAC_PI_2,
        });
    }
    if !assist_force.is_finite() || assist_force < 0.0 {
        return Err(Error::InvalidLoad(format!(
            "assist_force must be non-negative, got {assist_force}"
        )));
    }
    let sin = trunk_angle.sin();
    let load_arm = anthropometrics.trunk_length * sin + anthropometrics.hand_offset;
    let body_arm = anthropometrics.body_lever_ratio * anthropometrics.trunk_length * sin;
    let gravity_moment = GRAVITY_M_S2
        * (anthropometrics.load_mass * load_arm + anthropometrics.body_mass * body_arm);
    let muscle_force = (gravity_moment - assist_force * arms.assist_arm) / arms.muscle_arm;

    let weight = (anthropometrics.body_mass + anthropometrics.load_mass) * GRAVITY_M_S2;
    let compression_force = muscle_force + weight * trunk_angle.cos();
    let gravity_shear = weight * sin;
    let shear_force = gravity_shear - assist_force;

    Ok(SpineForces {
        muscle_force,
        compression_force,
        shear_force,
        muscle_slack: muscle_force < 0.0,
        shear_reversed: shear_force < 0.0,
    })
}

/// Closed-form sensitivities of (muscle, compression, shear) to the assist
/// force. Constant in the posture: the model is affine in the assist.
pub fn assist_sensitivities(arms: &MomentArms) -> Result<(f64, f64, f64)> {
    arms.validate()?;
    let muscle = -arms.assist_arm / arms.muscle_arm;
    Ok((muscle, muscle, -1.0))
}

/// Symmetric stoop cycle: rest, flex to `peak_angle` at half period, return.
/// `t` wraps modulo the cycle, so long simulations can sample it directly.
pub fn stoop_trajectory(t: f64, cycle_duration: f64, peak_angle: f64) -> TrunkState {
    let phase = t.rem_euclid(cycle_duration) * std::f64::consts::TAU / cycle_duration;
    let rate = std::f64::consts::TAU / cycle_duration;
    let half = 0.5 * peak_angle;
    TrunkState {
        angle: half * (1.0 - phase.cos()),
        velocity: half * rate * phase.sin(),
        acceleration: half * rate * rate * phase.cos(),
    }
}

/// Raised-cosine assist decay: full force at `t = 0`, zero from
/// `t = ramp_duration` on, zero before onset.
pub fn assist_profile(t: f64, peak_force: f64, ramp_duration: f64) -> f64 {
    if t < 0.0 || t > ramp_duration {
        return 0.0;
    }
    0.5 * peak_force * (1.0 + (std::f64::consts::PI * t / ramp_duration).cos())
}

/// One sampled instant of an assisted stoop cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiomechSample {
    pub t: f64,
    pub trunk_angle: f64,
    pub assist_force: f64,
    pub without: SpineForces,
    pub with: SpineForces,
}

/// Peak comparison for one force quantity over a cycle, N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionRow {
    pub quantity: &'static str,
    pub peak_without: f64,
    pub peak_with: f64,
    pub reduction: f64,
    pub reduction_percent: f64,
}

/// Peak lumbar loads over one stoop cycle, with and without assist.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    /// Muscle, compression, then shear.
    pub rows: [ReductionRow; 3],
    pub samples: Vec<BiomechSample>,
}

/// Sample a stoop cycle and compare peak lumbar loads with and without the
/// assist. The assist ramps with the raised-cosine profile centered on the
/// deepest flexion, so it peaks exactly when the trunk does.
pub fn reduction_report(
    anthropometrics: &Anthropometrics,
    arms: &MomentArms,
    peak_assist: f64,
    cycle_duration: f64,
    peak_angle: f64,
    sample_count: usize,
) -> Result<ReductionReport> {
    if sample_count < 2 {
        return Err(Error::OutOfRange {
            name: "sample_count",
            value: sample_count as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    if !cycle_duration.is_finite() || cycle_duration <= 0.0 {
        return Err(Error::OutOfRange {
            name: "cycle_duration",
            value: cycle_duration,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if !peak_angle.is_finite() || !(0.0..=FRAC_PI_2).contains(&peak_angle) {
        return Err(Error::OutOfRange {
            name: "peak_angle",
            value: peak_angle,
            min: 0.0,
            max: FRAC_PI_2,
        });
    }
    let half = 0.5 * cycle_duration;
    let mut samples = Vec::with_capacity(sample_count);
    for index in 0..sample_count {
        let t = index as f64 * cycle_duration / sample_count as f64;
        let trunk = stoop_trajectory(t, cycle_duration, peak_angle);
        let assist = assist_profile((t - half).abs(), peak_assist, half);
        samples.push(BiomechSample {
            t,
            trunk_angle: trunk.angle,
            assist_force: assist,
            without: lumbar_forces(anthropometrics, arms, trunk.angle, 0.0)?,
            with: lumbar_forces(anthropometrics, arms, trunk.angle, assist)?,
        });
    }
    let peak = |select: &dyn Fn(&SpineForces) -> f64, assisted: bool| {
        samples
            .iter()
            .map(|s| select(if assisted { &s.with } else { &s.without }))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let row = |quantity: &'static str, select: &dyn Fn(&SpineForces) -> f64| {
        let peak_without = peak(select, false);
        let peak_with = peak(select, true);
        let reduction = peak_without - peak_with;
        ReductionRow {
            quantity,
            peak_without,
            peak_with,
            reduction,
            reduction_percent: if peak_without != 0.0 {
                100.0 * reduction / peak_without
            } else {
                0.0
            },
        }
    };
    Ok(ReductionReport {
        rows: [
            row("muscle", &|f| f.muscle_force),
            row("compression", &|f| f.compression_force),
            row("shear", &|f| f.shear_force),
        ],
        samples,
    })
}
