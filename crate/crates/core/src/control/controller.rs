//! Drive controllers, selectable by name at runtime.
//!
//! Two-rate cascade: `update_reference` runs at the force-loop rate with the
//! fresh force reference and sensor snapshot, `current_command` runs at the
//! drive rate for every plant substep. Sensors available to controllers are
//! the anchor-side and drum-side force, the sheath slide velocity, and the
//! motor encoder speed; plant internals like the true winding current stay
//! hidden.

use crate::biomech::TrunkState;
use crate::control::pid::{pid_step, PidGains, PidState};
use crate::control::plant::{PlantOutput, PlantParams};
use crate::control::sim::SimConfig;
use crate::error::{Error, Result};

pub trait Controller: Send {
    fn name(&self) -> &'static str;

    /// Force-loop update: new assist reference and the latest measurements.
    fn update_reference(
        &mut self,
        force_reference: f64,
        measured: &PlantOutput,
        trunk: &TrunkState,
        params: &PlantParams,
        dt: f64,
    );

    /// Drive-rate update: winding current to command right now.
    fn current_command(
        &mut self,
        measured: &PlantOutput,
        motor_speed: f64,
        params: &PlantParams,
        dt: f64,
    ) -> f64;

    /// Commanded motor speed for tracing; zero when the strategy has none.
    fn speed_reference(&self) -> f64 {
        0.0
    }
}

/// Static current map: the current whose stalled torque holds the reference
/// force at the drum. No feedback, no friction or motion compensation; the
/// baseline the closed loop is judged against.
#[derive(Debug, Clone, Copy, Default)]
pub struct OpenLoopCurrent {
    force_reference: f64,
}

impl Controller for OpenLoopCurrent {
    fn name(&self) -> &'static str {
        "open_loop_current"
    }

    fn update_reference(
        &mut self,
        force_reference: f64,
        _measured: &PlantOutput,
        _trunk: &TrunkState,
        _params: &PlantParams,
        _dt: f64,
    ) {
        self.force_reference = force_reference;
    }

    fn current_command(
        &mut self,
        _measured: &PlantOutput,
        _motor_speed: f64,
        params: &PlantParams,
        _dt: f64,
    ) -> f64 {
        (self.force_reference * params.spool_per_radian() / params.torque_constant)
            .clamp(-params.stall_current(), params.stall_current())
    }
}

/// Cascaded force controller: an outer PID on the assist force sets a motor
/// speed reference, an inner PID on encoder speed sets the current.
///
/// The sheath transmission multiplies the drum-side tension by a steep
/// direction factor of the slide velocity, so a PID fed the raw anchor-side
/// force chatters around velocity reversals. The outer loop therefore works
/// drum-side: the measurement is the anchor-side force mapped through the
/// factor at the measured slide velocity, which cancels the transmission and
/// leaves the smooth drum tension, and the setpoint is the reference mapped
/// through the factor at a model slide velocity. The model is a one-state
/// relaxation: on a free slide it equals the anchor velocity, but around a
/// reversal the tension must creep across the friction split through the
/// drum, which stalls the slide for a stiffness-dependent while. Holding the
/// drum tension on that path makes the plant's slide reproduce the model
/// velocity, so zero error delivers the reference through reversals too.
///
/// With `feedforward` on, the outer loop adds the spool speed that follows
/// the anchor while ramping the drum tension along the model path, and the
/// inner loop adds the current holding the measured tension and viscous
/// drag. The PIDs then only clean up residuals.
#[derive(Debug, Clone)]
pub struct ClosedLoopForce {
    force_gains: PidGains,
    velocity_gains: PidGains,
    feedforward: bool,
    lever: f64,
    force_state: PidState,
    velocity_state: PidState,
    speed_reference: f64,
    previous_reference: Option<f64>,
    /// Model slide velocity from the creep relaxation, feedforward only.
    creep_velocity: f64,
}

impl ClosedLoopForce {
    pub fn new(
        force_gains: PidGains,
        velocity_gains: PidGains,
        feedforward: bool,
        lever: f64,
    ) -> Self {
        Self {
            force_gains,
            velocity_gains,
            feedforward,
            lever,
            force_state: PidState::default(),
            velocity_state: PidState::default(),
            speed_reference: 0.0,
            previous_reference: None,
            creep_velocity: 0.0,
        }
    }
}

impl Controller for ClosedLoopForce {
    fn name(&self) -> &'static str {
        "closed_loop_force"
    }

    fn update_reference(
        &mut self,
        force_reference: f64,
        measured: &PlantOutput,
        trunk: &TrunkState,
        params: &PlantParams,
        dt: f64,
    ) {
        // Map the measurement drum-side at the measured slide velocity: the
        // transmission cancels, leaving the smooth drum tension. The target
        // gets its direction factor from the creep model instead, because
        // any measured-velocity term in the target turns the factor's steep
        // slope into a one-sample feedback gain that blows up when a
        // reversal parks the slide at the kink.
        let direction = (measured.cable_velocity / params.velocity_band).tanh();
        let drum_factor = (direction * params.friction_curvature).exp();
        let proximal_estimate = measured.distal_force * drum_factor;

        let drum_map = |slide: f64| -> f64 {
            ((slide / params.velocity_band).tanh() * params.friction_curvature).exp()
        };
        // How long the drum needs to creep the tension across the friction
        // split; it vanishes on a free slide, where the slide just follows
        // the anchor.
        let creep_time = |slide: f64, reference: f64| -> f64 {
            let direction = (slide / params.velocity_band).tanh();
            reference.abs()
                * drum_map(slide)
                * params.friction_curvature
                * (1.0 - direction * direction)
                / (2.0 * params.cable_stiffness * params.velocity_band)
        };
        let reference_rate = match self.previous_reference {
            Some(previous) => (force_reference - previous) / dt,
            None => 0.0,
        };
        let reference_next = force_reference + reference_rate * dt;
        // The spool command holds for the whole tick, so aim at the
        // mid-interval anchor speed.
        let anchor_speed =
            self.lever * (trunk.velocity + 0.5 * dt * trunk.acceleration);
        let proximal_target = force_reference * drum_map(self.creep_velocity);
        // Relax the model slide velocity toward the anchor velocity, one
        // tick ahead with a midpoint pass. Holding the drum tension on the
        // resulting target reproduces this very slide velocity, so the
        // delivered force stays on the reference through reversals.
        let pull = anchor_speed
            - reference_rate * drum_map(self.creep_velocity)
                / (2.0 * params.cable_stiffness);
        let sigma = creep_time(self.creep_velocity, force_reference);
        let step = (sigma * self.creep_velocity + dt * pull) / (sigma + dt);
        let midpoint = 0.5 * (self.creep_velocity + step);
        let pull = anchor_speed
            - reference_rate * drum_map(midpoint) / (2.0 * params.cable_stiffness);
        let sigma = creep_time(midpoint, 0.5 * (force_reference + reference_next));
        let ahead = (sigma * self.creep_velocity + dt * pull) / (sigma + dt);
        self.creep_velocity = ahead;

        // With the feedforward off the PIDs chase the moving target alone
        // and reversals cost a visible transient, part of the friction
        // price that baseline is meant to show.
        let feedforward_speed = if self.feedforward {
            // Spool speed that follows the anchor while ramping the
            // drum-side tension along the model's own path over the tick.
            let target_rate =
                (reference_next * drum_map(ahead) - proximal_target) / dt;
            (-anchor_speed + target_rate / params.cable_stiffness)
                / params.spool_per_radian()
        } else {
            0.0
        };

        let (pid_speed, next) = pid_step(
            &self.force_gains,
            proximal_target,
            proximal_estimate,
            self.force_state,
            dt,
        );
        self.force_state = next;
        self.previous_reference = Some(force_reference);
        self.speed_reference =
            (pid_speed + feedforward_speed).clamp(-params.speed_limit, params.speed_limit);
    }

    fn current_command(
        &mut self,
        measured: &PlantOutput,
        motor_speed: f64,
        params: &PlantParams,
        dt: f64,
    ) -> f64 {
        let (pid_current, next) = pid_step(
            &self.velocity_gains,
            self.speed_reference,
            motor_speed,
            self.velocity_state,
            dt,
        );
        self.velocity_state = next;
        let mut current = pid_current;
        if self.feedforward {
            // Torque holding the measured drum tension and viscous drag.
            current += (measured.proximal_force * params.spool_per_radian()
                + params.viscous_friction * motor_speed)
                / params.torque_constant;
        }
        current.clamp(-params.stall_current(), params.stall_current())
    }

    fn speed_reference(&self) -> f64 {
        self.speed_reference
    }
}

/// Registry entry: a named constructor for a controller.
#[derive(Debug)]
pub struct ControllerEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn(&SimConfig) -> Box<dyn Controller>,
}

/// All controllers, selectable by name from configs and the command line.
pub static CONTROLLERS: &[ControllerEntry] = &[
    ControllerEntry {
        name: "closed_loop_force",
        description: "cascaded force and speed PIDs with optional feedforward",
        build: |config| {
            Box::new(ClosedLoopForce::new(
                config.force_gains,
                config.velocity_gains,
                config.feedforward,
                config.lever,
            ))
        },
    },
    ControllerEntry {
        name: "open_loop_current",
        description: "static stall-current map, no feedback",
        build: |_| Box::new(OpenLoopCurrent::default()),
    },
];

pub fn controller_by_name(name: &str) -> Result<&'static ControllerEntry> {
    CONTROLLERS.iter().find(|entry| entry.name == name).ok_or_else(|| {
        Error::UnknownStrategy {
            kind: "controller",
            name: name.to_string(),
            available: CONTROLLERS
                .iter()
                .map(|entry| entry.name)
                .collect::<Vec<_>>()
                .join(", "),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::plant::{plant_step, PlantState};
    use approx::assert_relative_eq;

    #[test]
    fn open_loop_current_is_the_stall_map() {
        let params = PlantParams::default();
        let mut controller = OpenLoopCurrent::default();
        controller.update_reference(
            200.0,
            &PlantOutput::default(),
            &TrunkState::default(),
            &params,
            1e-3,
        );
        let current = controller.current_command(&PlantOutput::default(), 0.0, &params, 1e-4);
        assert_relative_eq!(
            current,
            200.0 * (0.05 / 36.0) / 0.05,
            max_relative = 1e-12
        );
    }

    #[test]
    fn registry_resolves_names_and_rejects_unknowns() {
        assert_eq!(controller_by_name("closed_loop_force").unwrap().name, "closed_loop_force");
        assert_eq!(controller_by_name("open_loop_current").unwrap().name, "open_loop_current");
        match controller_by_name("lqr") {
            Err(Error::UnknownStrategy { kind, available, .. }) => {
                assert_eq!(kind, "controller");
                assert!(available.contains("closed_loop_force"));
                assert!(available.contains("open_loop_current"));
            }
            other => panic!("expected UnknownStrategy, got {other:?}"),
        }
    }

    /// Hold the anchor still and ask for a constant force: the closed loop
    /// must settle on the reference through the sheath friction, with or
    /// without feedforward.
    #[test]
    fn closed_loop_settles_on_a_constant_reference() {
        let config = SimConfig::default();
        let params = PlantParams::default();
        for feedforward in [true, false] {
            let mut controller = ClosedLoopForce::new(
                config.force_gains,
                config.velocity_gains,
                feedforward,
                config.lever,
            );
            let mut plant = PlantState::default();
            let mut output = PlantOutput::default();
            let trunk = TrunkState::default();
            // Anchor parked with some pretension headroom.
            let anchor = 0.001;
            for _ in 0..2_000 {
                controller.update_reference(150.0, &output, &trunk, &params, 1e-3);
                for _ in 0..10 {
                    let current =
                        controller.current_command(&output, plant.motor_speed, &params, 1e-4);
                    output = plant_step(&mut plant, current, anchor, 0.0, &params, 1e-4);
                }
            }
            assert!(
                (output.distal_force - 150.0).abs() < 1.0,
                "feedforward {feedforward}: settled at {}",
                output.distal_force
            );
        }
    }

    #[test]
    fn built_controllers_report_their_names() {
        let config = SimConfig::default();
        for entry in CONTROLLERS {
            let controller = (entry.build)(&config);
            assert_eq!(controller.name(), entry.name);
        }
    }
}
