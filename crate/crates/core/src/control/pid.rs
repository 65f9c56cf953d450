//! Discrete PID update with clamped integral and output.

use crate::error::{Error, Result};

/// PID gains and limits. The integral clamp bounds the stored integral (in
/// error-seconds), which caps windup while saturated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
    pub output_min: f64,
    pub output_max: f64,
    pub integral_min: f64,
    pub integral_max: f64,
}

impl PidGains {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("kp", self.kp), ("ki", self.ki), ("kd", self.kd)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        if !(self.output_min.is_finite() && self.output_max.is_finite())
            || self.output_min > self.output_max
            || !(self.integral_min.is_finite() && self.integral_max.is_finite())
            || self.integral_min > self.integral_max
        {
            return Err(Error::InvalidLoad(format!(
                "PID limits must be finite ordered pairs, got output [{}, {}], integral [{}, {}]",
                self.output_min, self.output_max, self.integral_min, self.integral_max
            )));
        }
        Ok(())
    }
}

/// Carried PID state. `previous_error` is `None` before the first update so
/// the derivative term cannot kick on startup.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PidState {
    pub integral: f64,
    pub previous_error: Option<f64>,
}

/// One PID update; pure, returns the clamped command and the next state.
/// `dt` must be positive.
pub fn pid_step(
    gains: &PidGains,
    setpoint: f64,
    measurement: f64,
    state: PidState,
    dt: f64,
) -> (f64, PidState) {
    debug_assert!(dt > 0.0);
    let error = setpoint - measurement;
    let integral = (state.integral + error * dt).clamp(gains.integral_min, gains.integral_max);
    let derivative = match state.previous_error {
        Some(previous) => (error - previous) / dt,
        None => 0.0,
    };
    let command = (gains.kp * error + gains.ki * integral + gains.kd * derivative)
        .clamp(gains.output_min, gains.output_max);
    (command, PidState { integral, previous_error: Some(error) })
}
