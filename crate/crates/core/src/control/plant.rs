//! Motor, gearbox, drum, and Bowden cable plant.
//!
//! A current-driven DC motor behind a gearbox winds a drum; the cable runs
//! through a curved sheath to an anchor that the wearer's trunk drags along.
//! Cable stretch against the series stiffness sets the drum-side tension, the
//! sheath's capstan friction sets what reaches the anchor. Signs: positive
//! motor speed reels cable in, positive anchor displacement pulls cable out,
//! and positive cable velocity means cable paying out toward the anchor.

use crate::control::hysteresis::hysteresis_transmission;
use crate::error::{Error, Result};

/// Plant constants, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantParams {
    /// Motor torque constant, N*m/A.
    pub torque_constant: f64,
    /// Torque clamp of the drive, N*m (motor side).
    pub nominal_torque: f64,
    /// Gearbox reduction, motor turns per drum turn.
    pub gear_ratio: f64,
    /// Drum radius, m.
    pub drum_radius: f64,
    /// Rotor plus reflected drivetrain inertia at the motor shaft, kg*m^2.
    pub rotor_inertia: f64,
    /// Viscous drag at the motor shaft, N*m*s/rad.
    pub viscous_friction: f64,
    /// Current-loop settling time constant of the drive, s.
    pub current_lag: f64,
    /// Series stiffness of cable plus sheath, N/m.
    pub cable_stiffness: f64,
    /// Largest tension the rig tolerates, N.
    pub force_saturation: f64,
    /// Friction coefficient times accumulated sheath wrap angle.
    pub friction_curvature: f64,
    /// Velocity scale of the smooth capstan direction factor, m/s.
    pub velocity_band: f64,
    /// Motor speed clamp, rad/s.
    pub speed_limit: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self {
            torque_constant: 0.05,
            nominal_torque: 2.0,
            gear_ratio: 36.0,
            drum_radius: 0.05,
            rotor_inertia: 1e-5,
            viscous_friction: 2e-4,
            current_lag: 1e-3,
            cable_stiffness: 5e4,
            force_saturation: 1500.0,
            friction_curvature: 0.2,
            velocity_band: 1e-3,
            // 1500 rpm.
            speed_limit: 50.0 * std::f64::consts::PI,
        }
    }
}

impl PlantParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("torque_constant", self.torque_constant),
            ("nominal_torque", self.nominal_torque),
            ("gear_ratio", self.gear_ratio),
            ("drum_radius", self.drum_radius),
            ("rotor_inertia", self.rotor_inertia),
            ("current_lag", self.current_lag),
            ("cable_stiffness", self.cable_stiffness),
            ("force_saturation", self.force_saturation),
            ("velocity_band", self.velocity_band),
            ("speed_limit", self.speed_limit),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        for (name, value) in [
            ("viscous_friction", self.viscous_friction),
            ("friction_curvature", self.friction_curvature),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        Ok(())
    }

    /// Meters of cable wound per radian of motor rotation.
    pub fn spool_per_radian(&self) -> f64 {
        self.drum_radius / self.gear_ratio
    }

    /// Drum-side tension the clamped torque can hold at stall, N.
    pub fn stall_cable_force(&self) -> f64 {
        self.nominal_torque * self.gear_ratio / self.drum_radius
    }

    /// Cable speed at the motor speed clamp, m/s.
    pub fn no_load_cable_speed(&self) -> f64 {
        self.speed_limit * self.drum_radius / self.gear_ratio
    }

    /// Current that saturates the torque clamp, A.
    pub fn stall_current(&self) -> f64 {
        self.nominal_torque / self.torque_constant
    }
}

/// Integrated plant state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantState {
    /// Motor winding current, A.
    pub current: f64,
    /// Motor shaft speed, rad/s (positive reels in).
    pub motor_speed: f64,
    /// Motor shaft angle, rad.
    pub motor_angle: f64,
}

/// Measurements after one plant substep.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantOutput {
    /// Drum-side cable tension, N.
    pub proximal_force: f64,
    /// Anchor-side (assist) force after sheath friction, N.
    pub distal_force: f64,
    /// Slide velocity in the sheath, m/s, positive paying out.
    pub cable_velocity: f64,
    /// Cable stretch against the series stiffness, m.
    pub stretch: f64,
    /// Net cable the drum has paid out since start, m.
    pub payout: f64,
}

fn proximal_tension(stretch: f64, params: &PlantParams) -> f64 {
    (params.cable_stiffness * stretch.max(0.0)).min(params.force_saturation)
}

/// Advance the plant one explicit-Euler substep of length `dt`.
///
/// `command_current` is what the drive is asked for (it lags by
/// `current_lag` and respects the torque clamp); `anchor_position` and
/// `anchor_velocity` describe the wearer-side cable end, in cable meters.
pub fn plant_step(
    state: &mut PlantState,
    command_current: f64,
    anchor_position: f64,
    anchor_velocity: f64,
    params: &PlantParams,
    dt: f64,
) -> PlantOutput {
    debug_assert!(dt > 0.0);
    let spool = params.spool_per_radian();

    // Drive current lags the (drive-limited) command.
    let command = command_current.clamp(-params.stall_current(), params.stall_current());
    state.current += (command - state.current) * dt / params.current_lag;

    // Tension from the stretch at the top of the substep.
    let stretch = anchor_position + spool * state.motor_angle;
    let tension = proximal_tension(stretch, params);

    // Motor shaft: clamped electrical torque against cable and drag.
    let torque = (params.torque_constant * state.current)
        .clamp(-params.nominal_torque, params.nominal_torque);
    let acceleration =
        (torque - tension * spool - params.viscous_friction * state.motor_speed)
            / params.rotor_inertia;
    state.motor_speed = (state.motor_speed + acceleration * dt)
        .clamp(-params.speed_limit, params.speed_limit);
    state.motor_angle += state.motor_speed * dt;

    // Measurements at the end of the substep.
    let stretch = anchor_position + spool * state.motor_angle;
    let proximal_force = proximal_tension(stretch, params);
    let cable_velocity = 0.5 * (anchor_velocity - spool * state.motor_speed);
    let distal_force = hysteresis_transmission(
        proximal_force,
        cable_velocity,
        params.friction_curvature,
        params.velocity_band,
        params.force_saturation,
    );
    PlantOutput {
        proximal_force,
        distal_force,
        cable_velocity,
        stretch,
        payout: -spool * state.motor_angle,
    }
}
