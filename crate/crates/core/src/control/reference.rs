//! Assistive-force reference laws, selectable by name at runtime.

use crate::biomech::TrunkState;
use crate::control::sim::SimConfig;
use crate::error::{Error, Result};

/// Maps the wearer's trunk state to a desired assist force at the cable.
/// Laws must return a non-negative force: the cable cannot push.
pub trait ReferenceLaw: Send + Sync {
    fn name(&self) -> &'static str;
    fn cable_force(&self, trunk: &TrunkState) -> f64;
}

/// Gravity-shaped law: a stiffness term against the flexed posture's gravity
/// moment plus viscous damping on the flexion rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityStiffnessParams {
    /// N of cable force per unit sine of trunk angle.
    pub stiffness: f64,
    /// N of cable force per rad/s of flexion rate.
    pub damping: f64,
}

impl Default for GravityStiffnessParams {
    fn default() -> Self {
        Self { stiffness: 200.0, damping: 20.0 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GravityStiffness {
    params: GravityStiffnessParams,
}

impl GravityStiffness {
    pub fn new(params: GravityStiffnessParams) -> Self {
        Self { params }
    }
}

impl ReferenceLaw for GravityStiffness {
    fn name(&self) -> &'static str {
        "gravity"
    }

    fn cable_force(&self, trunk: &TrunkState) -> f64 {
        (self.params.stiffness * trunk.angle.sin() + self.params.damping * trunk.velocity)
            .max(0.0)
    }
}

/// Rendered joint impedance: torque stiffness, damping, and inertia against
/// the deviation from a desired trunk state, divided by the anchor lever to
/// become a cable force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceParams {
    /// N*m/rad.
    pub stiffness: f64,
    /// N*m*s/rad.
    pub damping: f64,
    /// N*m*s^2/rad.
    pub inertia: f64,
}

impl Default for ImpedanceParams {
    /// Chosen to coincide with the default gravity law at small angles:
    /// stiffness/lever = 200 N, damping/lever = 20 N*s.
    fn default() -> Self {
        Self { stiffness: 60.0, damping: 6.0, inertia: 0.0 }
    }
}

/// Cable force an impedance renders at one trunk state, and whether the
/// non-negativity clamp engaged.
pub fn impedance_reference(
    params: &ImpedanceParams,
    desired: &TrunkState,
    actual: &TrunkState,
    lever: f64,
) -> (f64, bool) {
    let torque = params.stiffness * (actual.angle - desired.angle)
        + params.damping * (actual.velocity - desired.velocity)
        + params.inertia * (actual.acceleration - desired.acceleration);
    let force = torque / lever;
    if force < 0.0 {
        (0.0, true)
    } else {
        (force, false)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Impedance {
    params: ImpedanceParams,
    desired: TrunkState,
    lever: f64,
}

impl Impedance {
    pub fn new(params: ImpedanceParams, desired: TrunkState, lever: f64) -> Self {
        Self { params, desired, lever }
    }
}

impl ReferenceLaw for Impedance {
    fn name(&self) -> &'static str {
        "impedance"
    }

    fn cable_force(&self, trunk: &TrunkState) -> f64 {
        impedance_reference(&self.params, &self.desired, trunk, self.lever).0
    }
}

/// Registry entry: a named constructor for a reference law.
#[derive(Debug)]
pub struct ReferenceEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn(&SimConfig) -> Box<dyn ReferenceLaw>,
}

/// All reference laws, selectable by name from configs and the command line.
pub static REFERENCE_LAWS: &[ReferenceEntry] = &[
    ReferenceEntry {
        name: "gravity",
        description: "stiffness against gravity moment plus rate damping",
        build: |config| Box::new(GravityStiffness::new(config.gravity)),
    },
    ReferenceEntry {
        name: "impedance",
        description: "rendered joint impedance about a desired trunk state",
        build: |config| {
            Box::new(Impedance::new(config.impedance, config.desired, config.lever))
        },
    },
];

pub fn reference_by_name(name: &str) -> Result<&'static ReferenceEntry> {
    REFERENCE_LAWS.iter().find(|entry| entry.name == name).ok_or_else(|| {
        Error::UnknownStrategy {
            kind: "reference law",
            name: name.to_string(),
            available: REFERENCE_LAWS
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
    use approx::assert_relative_eq;

    #[test]
    fn gravity_law_frozen_spot_values() {
        let law = GravityStiffness::new(GravityStiffnessParams::default());
        let moving = TrunkState {
            angle: 30.0_f64.to_radians(),
            velocity: 0.5,
            acceleration: 0.0,
        };
        assert_relative_eq!(law.cable_force(&moving), 110.0, max_relative = 1e-12);
        let deep = TrunkState {
            angle: 90.0_f64.to_radians(),
            velocity: 0.0,
            acceleration: 0.0,
        };
        assert_relative_eq!(law.cable_force(&deep), 200.0, max_relative = 1e-12);
        // Fast extension near upright would pull negative; the law clamps.
        let extending = TrunkState { angle: 0.01, velocity: -2.0, acceleration: 0.0 };
        assert_eq!(law.cable_force(&extending), 0.0);
    }

    #[test]
    fn impedance_frozen_spot_value_and_clamp() {
        let params = ImpedanceParams { stiffness: 100.0, damping: 0.0, inertia: 0.0 };
        let desired = TrunkState::default();
        let flexed = TrunkState { angle: 0.5, velocity: 0.0, acceleration: 0.0 };
        let (force, clamped) = impedance_reference(&params, &desired, &flexed, 0.25);
        assert_relative_eq!(force, 200.0, max_relative = 1e-12);
        assert!(!clamped);

        let behind = TrunkState { angle: -0.1, velocity: 0.0, acceleration: 0.0 };
        let (force, clamped) = impedance_reference(&params, &desired, &behind, 0.25);
        assert_eq!(force, 0.0);
        assert!(clamped);
    }

    #[test]
    fn impedance_terms_superpose() {
        let params = ImpedanceParams { stiffness: 50.0, damping: 4.0, inertia: 0.5 };
        let desired = TrunkState { angle: 0.1, velocity: 0.05, acceleration: 0.0 };
        let actual = TrunkState { angle: 0.4, velocity: 0.3, acceleration: 0.2 };
        let (force, _) = impedance_reference(&params, &desired, &actual, 0.3);
        let expected = (50.0 * 0.3 + 4.0 * 0.25 + 0.5 * 0.2) / 0.3;
        assert_relative_eq!(force, expected, max_relative = 1e-12);
    }

    #[test]
    fn default_impedance_coincides_with_gravity_law_at_small_angles() {
        let impedance = Impedance::new(ImpedanceParams::default(), TrunkState::default(), 0.3);
        let gravity = GravityStiffness::new(GravityStiffnessParams::default());
        for milli in [9, 20, 40, 60, 87] {
            let angle = milli as f64 * 1e-3;
            for velocity in [0.0, 0.1, 0.3] {
                let trunk = TrunkState { angle, velocity, acceleration: 0.0 };
                let a = impedance.cable_force(&trunk);
                let b = gravity.cable_force(&trunk);
                assert!(
                    (a - b).abs() <= 0.02 * b.abs(),
                    "impedance {a} vs gravity {b} at angle {angle}"
                );
            }
        }
    }

    #[test]
    fn registry_resolves_names_and_rejects_unknowns() {
        assert_eq!(reference_by_name("gravity").unwrap().name, "gravity");
        assert_eq!(reference_by_name("impedance").unwrap().name, "impedance");
        let missing = reference_by_name("pd");
        match missing {
            Err(Error::UnknownStrategy { kind, available, .. }) => {
                assert_eq!(kind, "reference law");
                assert!(available.contains("gravity"));
                assert!(available.contains("impedance"));
            }
            other => panic!("expected UnknownStrategy, got {other:?}"),
        }
    }

    #[test]
    fn built_laws_report_their_names() {
        let config = SimConfig::default();
        for entry in REFERENCE_LAWS {
            let law = (entry.build)(&config);
            assert_eq!(law.name(), entry.name);
            // Every law is non-negative over the stoop envelope.
            for k in 0..50 {
                let trunk = crate::biomech::stoop_trajectory(
                    k as f64 * 0.16,
                    8.0,
                    70.0_f64.to_radians(),
                );
                assert!(law.cable_force(&trunk) >= 0.0);
            }
        }
    }
}
