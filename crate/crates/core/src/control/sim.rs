//! Closed-loop stoop simulation: trajectory, reference law, controller, and
//! plant wired together at two rates.

use std::f64::consts::FRAC_PI_2;

use crate::biomech::{stoop_trajectory, TrunkState};
use crate::control::controller::controller_by_name;
use crate::control::pid::PidGains;
use crate::control::plant::{plant_step, PlantOutput, PlantParams, PlantState};
use crate::control::reference::{
    reference_by_name, GravityStiffnessParams, ImpedanceParams,
};
use crate::error::{Error, Result};

/// Everything one simulation run needs. Angles in radians, SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Number of stoop cycles to run.
    pub cycles: usize,
    /// Stoop cycle duration, s.
    pub cycle_duration: f64,
    /// Deepest trunk flexion, rad.
    pub peak_angle: f64,
    /// Force-loop period, s. Must divide the cycle duration.
    pub control_period: f64,
    /// Plant and drive substeps per force-loop tick.
    pub substeps: usize,
    /// Anchor lever: cable meters drawn per radian of trunk flexion.
    pub lever: f64,
    /// Reference law name, resolved in the registry.
    pub reference: String,
    /// Controller name, resolved in the registry.
    pub controller: String,
    /// Whether the closed-loop controller adds its feedforward terms.
    pub feedforward: bool,
    pub gravity: GravityStiffnessParams,
    pub impedance: ImpedanceParams,
    /// Desired trunk state for the impedance law.
    pub desired: TrunkState,
    pub plant: PlantParams,
    pub force_gains: PidGains,
    pub velocity_gains: PidGains,
}

impl Default for SimConfig {
    fn default() -> Self {
        let speed_limit = 50.0 * std::f64::consts::PI;
        Self {
            cycles: 1,
            cycle_duration: 8.0,
            peak_angle: 70.0_f64.to_radians(),
            control_period: 1e-3,
            substeps: 10,
            lever: 0.30,
            reference: "gravity".to_string(),
            controller: "closed_loop_force".to_string(),
            feedforward: true,
            gravity: GravityStiffnessParams::default(),
            impedance: ImpedanceParams::default(),
            desired: TrunkState::default(),
            plant: PlantParams::default(),
            force_gains: PidGains {
                kp: 1.2,
                ki: 25.0,
                kd: 0.0,
                output_min: -speed_limit,
                output_max: speed_limit,
                integral_min: -8.0,
                integral_max: 8.0,
            },
            velocity_gains: PidGains {
                kp: 0.25,
                ki: 3.0,
                kd: 0.0,
                output_min: -40.0,
                output_max: 40.0,
                integral_min: -5.0,
                integral_max: 5.0,
            },
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cycles == 0 {
            return Err(Error::OutOfRange {
                name: "cycles",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        if self.substeps == 0 {
            return Err(Error::OutOfRange {
                name: "substeps",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        for (name, value) in [
            ("cycle_duration", self.cycle_duration),
            ("control_period", self.control_period),
            ("lever", self.lever),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        if !self.peak_angle.is_finite() || !(0.0..=FRAC_PI_2).contains(&self.peak_angle) {
            return Err(Error::OutOfRange {
                name: "peak_angle",
                value: self.peak_angle,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        let ticks = self.cycle_duration / self.control_period;
        if (ticks - ticks.round()).abs() > 1e-9 * ticks.max(1.0) || ticks.round() < 2.0 {
            return Err(Error::OutOfRange {
                name: "cycle_duration / control_period",
                value: ticks,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        for (name, value) in [
            ("gravity.stiffness", self.gravity.stiffness),
            ("gravity.damping", self.gravity.damping),
            ("impedance.stiffness", self.impedance.stiffness),
            ("impedance.damping", self.impedance.damping),
            ("impedance.inertia", self.impedance.inertia),
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
        self.plant.validate()?;
        self.force_gains.validate()?;
        self.velocity_gains.validate()?;
        Ok(())
    }

    pub fn ticks_per_cycle(&self) -> usize {
        (self.cycle_duration / self.control_period).round() as usize
    }
}

/// One force-loop tick of the simulation, as sampled for traces. Plant
/// quantities are the measurements the controller acted on at this tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopState {
    pub t: f64,
    pub trunk: TrunkState,
    pub force_reference: f64,
    pub force_measured: f64,
    pub proximal_force: f64,
    pub speed_reference: f64,
    pub motor_speed: f64,
    pub current: f64,
    pub cable_velocity: f64,
    pub cable_payout: f64,
}

/// Full simulation record.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub control_period: f64,
    pub cycle_duration: f64,
    pub cycles: usize,
    pub samples: Vec<LoopState>,
}

impl SimTrace {
    pub fn samples_per_cycle(&self) -> usize {
        self.samples.len() / self.cycles.max(1)
    }
}

/// Run the two-rate loop over the configured stoop cycles.
///
/// Per force-loop tick: sample the trajectory, evaluate the reference law,
/// update the controller with the tick-time measurements, record the sample,
/// then run the drive and plant over the substeps. Everything is plain f64
/// arithmetic in a fixed order, so equal configs give bit-equal traces.
pub fn simulate_stoop(config: &SimConfig) -> Result<SimTrace> {
    config.validate()?;
    let reference = (reference_by_name(&config.reference)?.build)(config);
    let mut controller = (controller_by_name(&config.controller)?.build)(config);

    let ticks_per_cycle = config.ticks_per_cycle();
    let total_ticks = config.cycles * ticks_per_cycle;
    let substep = config.control_period / config.substeps as f64;

    let mut plant = PlantState::default();
    let mut output = PlantOutput::default();
    let mut samples = Vec::with_capacity(total_ticks);

    for tick in 0..total_ticks {
        let t = tick as f64 * config.control_period;
        let trunk = stoop_trajectory(t, config.cycle_duration, config.peak_angle);
        let force_reference = reference.cable_force(&trunk);
        controller.update_reference(
            force_reference,
            &output,
            &trunk,
            &config.plant,
            config.control_period,
        );
        samples.push(LoopState {
            t,
            trunk,
            force_reference,
            force_measured: output.distal_force,
            proximal_force: output.proximal_force,
            speed_reference: controller.speed_reference(),
            motor_speed: plant.motor_speed,
            current: plant.current,
            cable_velocity: output.cable_velocity,
            cable_payout: output.payout,
        });
        for sub in 0..config.substeps {
            let ts = t + sub as f64 * substep;
            let sub_trunk = stoop_trajectory(ts, config.cycle_duration, config.peak_angle);
            let current = controller.current_command(
                &output,
                plant.motor_speed,
                &config.plant,
                substep,
            );
            output = plant_step(
                &mut plant,
                current,
                config.lever * sub_trunk.angle,
                config.lever * sub_trunk.velocity,
                &config.plant,
                substep,
            );
        }
        if !output.distal_force.is_finite()
            || !plant.motor_speed.is_finite()
            || !plant.current.is_finite()
            || output.stretch.abs() > 10.0
        {
            return Err(Error::Unstable {
                t,
                tick,
                reason: format!(
                    "assist {} N, stretch {} m, motor {} rad/s",
                    output.distal_force, output.stretch, plant.motor_speed
                ),
            });
        }
    }
    Ok(SimTrace {
        control_period: config.control_period,
        cycle_duration: config.cycle_duration,
        cycles: config.cycles,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_broken_configs() {
        let broken = [
            SimConfig { cycles: 0, ..SimConfig::default() },
            // A 3 ms period does not divide the 8 s cycle cleanly.
            SimConfig { control_period: 3e-3, ..SimConfig::default() },
            SimConfig { peak_angle: 2.0, ..SimConfig::default() },
            SimConfig { lever: 0.0, ..SimConfig::default() },
        ];
        for config in &broken {
            assert!(config.validate().is_err());
        }

        assert!(SimConfig::default().validate().is_ok());
    }

    #[test]
    fn unknown_strategy_names_fail_up_front() {
        let config = SimConfig { reference: "pd".to_string(), ..SimConfig::default() };
        assert!(matches!(
            simulate_stoop(&config),
            Err(Error::UnknownStrategy { .. })
        ));
        let config = SimConfig { controller: "mpc".to_string(), ..SimConfig::default() };
        assert!(matches!(
            simulate_stoop(&config),
            Err(Error::UnknownStrategy { .. })
        ));
    }

    #[test]
    fn trace_shape_matches_the_clock() {
        let config = SimConfig { cycles: 2, ..SimConfig::default() };
        let trace = simulate_stoop(&config).unwrap();
        assert_eq!(trace.samples.len(), 16_000);
        assert_eq!(trace.samples_per_cycle(), 8_000);
        assert_eq!(trace.samples[0].t, 0.0);
        let dt = trace.samples[1].t - trace.samples[0].t;
        assert!((dt - 1e-3).abs() < 1e-12);
        // The loop starts at rest with no reference.
        assert_eq!(trace.samples[0].force_reference, 0.0);
        assert_eq!(trace.samples[0].force_measured, 0.0);
    }

    #[test]
    fn runaway_plants_are_reported_as_unstable() {
        // Stiff cable integrated far too coarsely: explicit Euler diverges.
        let config = SimConfig {
            substeps: 1,
            plant: PlantParams {
                cable_stiffness: 1e7,
                rotor_inertia: 1e-7,
                speed_limit: 1e12,
                nominal_torque: 1e9,
                torque_constant: 1e6,
                ..PlantParams::default()
            },
            ..SimConfig::default()
        };
        match simulate_stoop(&config) {
            Err(Error::Unstable { .. }) => {}
            other => panic!("expected Unstable, got {other:?}"),
        }
    }
}
