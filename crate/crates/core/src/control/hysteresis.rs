//! Bowden sheath friction between the drum-side and anchor-side tension.
//!
//! Tension crossing a curved sheath is attenuated by the capstan factor
//! `exp(-s * mu_theta)`, where `mu_theta` is the friction coefficient times
//! the accumulated wrap angle and `s` is the slide direction: +1 when the
//! cable pays out toward the anchor, -1 when it reels in. A `tanh` of the
//! slide velocity stands in for the hard sign so the factor stays smooth
//! through reversals, which is also where the force hysteresis loop closes.

/// Distal-over-proximal tension ratio. `cable_velocity > 0` means paying out.
pub fn transmission_ratio(
    cable_velocity: f64,
    friction_curvature: f64,
    velocity_band: f64,
) -> f64 {
    (-(cable_velocity / velocity_band).tanh() * friction_curvature).exp()
}

/// Anchor-side force for a drum-side tension: capstan attenuation, then
/// clamped to the physical range (a cable cannot push, the rig saturates).
pub fn hysteresis_transmission(
    proximal_force: f64,
    cable_velocity: f64,
    friction_curvature: f64,
    velocity_band: f64,
    force_cap: f64,
) -> f64 {
    (proximal_force * transmission_ratio(cable_velocity, friction_curvature, velocity_band))
        .clamp(0.0, force_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn frictionless_sheath_is_the_identity() {
        for velocity in [-2.0, -0.004, 0.0, 1e-5, 0.3] {
            assert_eq!(transmission_ratio(velocity, 0.0, 1e-3), 1.0);
            assert_eq!(hysteresis_transmission(123.456, velocity, 0.0, 1e-3, 1500.0), 123.456);
        }
    }

    #[test]
    fn stationary_cable_passes_force_through() {
        assert_eq!(transmission_ratio(0.0, 0.2, 1e-3), 1.0);
    }

    #[test]
    fn fast_slides_saturate_at_the_capstan_bounds() {
        let ratio_out = transmission_ratio(1.0, 0.2, 1e-3);
        let ratio_in = transmission_ratio(-1.0, 0.2, 1e-3);
        assert_relative_eq!(ratio_out, (-0.2f64).exp(), max_relative = 1e-9);
        assert_relative_eq!(ratio_in, (0.2f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn clamps_to_physical_forces() {
        // Reeling in amplifies, but the rig caps the output.
        assert_eq!(hysteresis_transmission(1490.0, -1.0, 0.2, 1e-3, 1500.0), 1500.0);
        assert_eq!(hysteresis_transmission(-5.0, 0.5, 0.2, 1e-3, 1500.0), 0.0);
    }

    proptest! {
        #[test]
        fn ratio_stays_inside_the_capstan_envelope(
            velocity in -5.0..5.0f64,
            friction in 0.0..1.0f64,
        ) {
            let ratio = transmission_ratio(velocity, friction, 1e-3);
            prop_assert!(ratio >= (-friction).exp() - 1e-15);
            prop_assert!(ratio <= friction.exp() + 1e-15);
        }

        #[test]
        fn ratio_decreases_with_payout_speed(
            slow in -2.0..2.0f64,
            step in 1e-4..2.0f64,
            friction in 0.01..1.0f64,
        ) {
            let fast = slow + step;
            let a = transmission_ratio(slow, friction, 1e-3);
            let b = transmission_ratio(fast, friction, 1e-3);
            prop_assert!(b <= a);
        }

        #[test]
        fn friction_widens_the_split(
            velocity in 0.01..2.0f64,
            low in 0.0..0.5f64,
            extra in 0.01..0.5f64,
        ) {
            // Paying out: more friction means less force gets through.
            let lighter = transmission_ratio(velocity, low, 1e-3);
            let heavier = transmission_ratio(velocity, low + extra, 1e-3);
            prop_assert!(heavier < lighter);
            // Reeling in mirrors it.
            let lighter_in = transmission_ratio(-velocity, low, 1e-3);
            let heavier_in = transmission_ratio(-velocity, low + extra, 1e-3);
            prop_assert!(heavier_in > lighter_in);
        }
    }
}
