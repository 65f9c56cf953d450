//! End-to-end checks of the assist loop: tracking quality of the defaults,
//! the friction cost without feedforward, and trace determinism.

use contispine_core::control::{simulate_stoop, tracking_metrics, SimConfig, TrackingMetrics};

fn metrics_for(mutate: impl Fn(&mut SimConfig)) -> TrackingMetrics {
    let mut config = SimConfig::default();
    mutate(&mut config);
    let trace = simulate_stoop(&config).expect("simulation");
    tracking_metrics(&trace, config.gravity.stiffness).expect("metrics")
}

#[test]
fn default_closed_loop_tracks_the_gravity_reference() {
    let metrics = metrics_for(|_| {});
    assert!(
        metrics.rms_error <= 0.5,
        "rms {} N should be well under a newton",
        metrics.rms_error
    );
    assert!(metrics.percent_of_peak <= 3.0);
    assert!(
        (0.95..=1.05).contains(&metrics.stiffness_slope),
        "slope {}",
        metrics.stiffness_slope
    );
    assert!(metrics.stiffness_r2 >= 0.99, "r2 {}", metrics.stiffness_r2);
}

#[test]
fn frictionless_feedforward_tracking_is_nearly_exact() {
    let metrics = metrics_for(|config| config.plant.friction_curvature = 0.0);
    assert!(metrics.rms_error <= 0.05, "rms {} N", metrics.rms_error);
}

#[test]
fn closing_the_loop_collapses_the_hysteresis_area() {
    let closed = metrics_for(|_| {});
    let open = metrics_for(|config| config.controller = "open_loop_current".to_string());
    assert!(open.loop_area > 0.0);
    assert!(
        closed.loop_area <= 0.1 * open.loop_area,
        "closed {} N^2 vs open {} N^2",
        closed.loop_area,
        open.loop_area
    );
}

#[test]
fn reactive_tracking_degrades_with_sheath_friction() {
    // Without the anticipatory terms the reversal transient grows with the
    // friction split, so the RMS error is strictly ordered in mu-theta.
    let rms: Vec<f64> = [0.0, 0.1, 0.2, 0.3]
        .iter()
        .map(|&friction| {
            metrics_for(|config| {
                config.feedforward = false;
                config.plant.friction_curvature = friction;
            })
            .rms_error
        })
        .collect();
    for pair in rms.windows(2) {
        assert!(pair[0] < pair[1], "rms not monotone in friction: {rms:?}");
    }
    // The feedforward recovers most of the friction cost at the default.
    let with_feedforward = metrics_for(|_| {}).rms_error;
    assert!(with_feedforward < 0.2 * rms[2]);
}

#[test]
fn equal_configs_give_bit_equal_traces() {
    let config = SimConfig::default();
    let first = simulate_stoop(&config).expect("first run");
    let second = simulate_stoop(&config).expect("second run");
    assert_eq!(first.samples.len(), second.samples.len());
    for (a, b) in first.samples.iter().zip(&second.samples) {
        assert!(a == b, "trace diverged at t = {}", a.t);
    }
}

#[test]
fn impedance_reference_is_tracked_as_tightly() {
    let config = SimConfig { reference: "impedance".to_string(), ..SimConfig::default() };
    let trace = simulate_stoop(&config).expect("simulation");
    let metrics = tracking_metrics(&trace, config.gravity.stiffness).expect("metrics");
    assert!(metrics.rms_error <= 0.5, "rms {} N", metrics.rms_error);
    assert!(metrics.percent_of_peak <= 1.0);
}
