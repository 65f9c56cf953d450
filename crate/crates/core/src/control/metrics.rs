//! Tracking quality metrics over a simulation trace.

use crate::control::sim::SimTrace;
use crate::error::{Error, Result};

/// Force-tracking summary of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingMetrics {
    /// RMS of measured minus reference assist force, N.
    pub rms_error: f64,
    /// Largest reference force seen, N.
    pub peak_reference: f64,
    /// RMS error as a percentage of the peak reference.
    pub percent_of_peak: f64,
    /// Unsigned area of the measured-vs-reference loop per cycle, N^2.
    /// Friction hysteresis opens this loop; perfect tracking closes it.
    pub loop_area: f64,
    /// Slope of measured force against the stiffness regressor.
    pub stiffness_slope: f64,
    /// Coefficient of determination of that straight-line fit.
    pub stiffness_r2: f64,
}

/// Compute tracking metrics. `stiffness` scales the regressor
/// `stiffness * sin(trunk angle)`, the posture-shaped component the measured
/// force is expected to render.
pub fn tracking_metrics(trace: &SimTrace, stiffness: f64) -> Result<TrackingMetrics> {
    let n = trace.samples.len();
    if n < 3 {
        return Err(Error::OutOfRange {
            name: "trace samples",
            value: n as f64,
            min: 3.0,
            max: f64::INFINITY,
        });
    }
    if !stiffness.is_finite() || stiffness <= 0.0 {
        return Err(Error::OutOfRange {
            name: "stiffness",
            value: stiffness,
            min: 0.0,
            max: f64::INFINITY,
        });
    }

    let mut squared_error = 0.0;
    let mut peak_reference = 0.0_f64;
    for sample in &trace.samples {
        let error = sample.force_measured - sample.force_reference;
        squared_error += error * error;
        peak_reference = peak_reference.max(sample.force_reference.abs());
    }
    let rms_error = (squared_error / n as f64).sqrt();
    let percent_of_peak =
        if peak_reference > 0.0 { 100.0 * rms_error / peak_reference } else { 0.0 };

    // Shoelace area of the closed (reference, measured) polygon, per cycle.
    let mut twice_area = 0.0;
    for k in 0..n {
        let a = &trace.samples[k];
        let b = &trace.samples[(k + 1) % n];
        twice_area += a.force_reference * b.force_measured
            - b.force_reference * a.force_measured;
    }
    let loop_area = 0.5 * twice_area.abs() / trace.cycles.max(1) as f64;

    // Straight-line fit of measured force on the stiffness regressor.
    let mut mean_x = 0.0;
    let mut mean_y = 0.0;
    let mut x_scale = 0.0_f64;
    for sample in &trace.samples {
        let x = stiffness * sample.trunk.angle.sin();
        mean_x += x;
        mean_y += sample.force_measured;
        x_scale = x_scale.max(x.abs());
    }
    mean_x /= n as f64;
    mean_y /= n as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for sample in &trace.samples {
        let dx = stiffness * sample.trunk.angle.sin() - mean_x;
        let dy = sample.force_measured - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // A constant regressor leaves sxx at rounding dust rather than zero, so
    // the degeneracy test is relative to the regressor's magnitude.
    if sxx <= n as f64 * (1e-12 * x_scale).powi(2) {
        return Err(Error::InvalidLoad(
            "stiffness regressor has no variation over the trace".into(),
        ));
    }
    let stiffness_slope = sxy / sxx;
    let stiffness_r2 = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 0.0 };

    Ok(TrackingMetrics {
        rms_error,
        peak_reference,
        percent_of_peak,
        loop_area,
        stiffness_slope,
        stiffness_r2,
    })
}
