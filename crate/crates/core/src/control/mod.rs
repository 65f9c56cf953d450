//! Closed-loop assistive-force control.
//!
//! The wearer follows a stoop trajectory; a reference law turns the trunk
//! state into a desired assist force; a controller drives the motor, drum,
//! and Bowden cable plant so the force that reaches the anchor tracks the
//! reference despite sheath friction. Reference laws and controllers are
//! strategy objects behind registries, selected by name at runtime.

pub mod controller;
pub mod hysteresis;
pub mod metrics;
pub mod pid;
pub mod plant;
pub mod reference;
pub mod sim;

pub use controller::{
    controller_by_name, ClosedLoopForce, Controller, ControllerEntry, OpenLoopCurrent,
    CONTROLLERS,
};
pub use hysteresis::{hysteresis_transmission, transmission_ratio};
pub use metrics::{tracking_metrics, TrackingMetrics};
pub use pid::{pid_step, PidGains, PidState};
pub use plant::{plant_step, PlantOutput, PlantParams, PlantState};
pub use reference::{
    impedance_reference, reference_by_name, GravityStiffness, GravityStiffnessParams,
    Impedance, ImpedanceParams, ReferenceEntry, ReferenceLaw, REFERENCE_LAWS,
};
pub use sim::{simulate_stoop, LoopState, SimConfig, SimTrace};
