//! Scenario configuration: one JSON file describes a whole run.
//!
//! The file must carry `schema_version` and may carry any of the named
//! sections; missing sections and fields fall back to the bench-unit
//! defaults, unknown keys are rejected. Angles in the file are degrees,
//! everything else is SI; conversion to the radian-based core types happens
//! in the `to_*` methods.
//!
//! Overrides stack in a fixed order before the typed parse: the
//! `CONTISPINE_OUT` environment variable replaces `run.output_dir`, then
//! subcommand mode flags, then `--set path=value` pairs, so the most explicit
//! source wins.

use std::fmt;
use std::fs;
use std::path::Path;

use contispine_core::biomech::{Anthropometrics, MomentArms, TrunkState};
use contispine_core::control::{PidGains, PlantParams, SimConfig};
use contispine_core::kinematics::{
    calibrate_hole_radius, DiscGeometry, MotionRequirements, REFERENCE_RETRACTION_M,
    REFERENCE_TOTAL_BEND_RAD,
};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The one schema this binary reads.
pub const SCHEMA_VERSION: u32 = 1;

/// A configuration or usage problem. Maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default)]
    pub requirements: RequirementsSection,
    #[serde(default)]
    pub design: DesignSection,
    #[serde(default)]
    pub statics: StaticsSection,
    #[serde(default)]
    pub biomech: BiomechSection,
    #[serde(default)]
    pub control: ControlSection,
    #[serde(default)]
    pub steer: SteerSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Directory all tables and the manifest are written into.
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    /// Whether to write `run_manifest.json` next to the tables.
    #[serde(default = "default_true")]
    pub manifest: bool,
}

fn default_output_dir() -> String {
    "out".to_string()
}

fn default_true() -> bool {
    true
}

impl Default for RunSection {
    fn default() -> Self {
        Self { output_dir: default_output_dir(), manifest: true }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    #[serde(default = "default_disc_radius")]
    pub disc_radius: f64,
    #[serde(default = "default_disc_gap")]
    pub disc_gap: f64,
    #[serde(default = "default_joint_spacing")]
    pub joint_spacing: f64,
    /// Cable hole offset from the disc center, m. Omitted means "fit it to
    /// the bench retraction datum", which is how the unit is characterized.
    #[serde(default)]
    pub hole_offset: Option<f64>,
    #[serde(default = "default_disc_count")]
    pub disc_count: usize,
    /// Offset from the last disc frame to the chain tip, m.
    #[serde(default = "default_end_offset")]
    pub end_offset: [f64; 3],
    /// Per-joint twist allowance. Omitted means the 90 deg whole-chain
    /// budget split evenly across the joints.
    #[serde(default)]
    pub axial_limit_deg: Option<f64>,
}

fn default_disc_radius() -> f64 {
    0.07
}

fn default_disc_gap() -> f64 {
    0.00216
}

fn default_joint_spacing() -> f64 {
    0.01
}

fn default_disc_count() -> usize {
    20
}

fn default_end_offset() -> [f64; 3] {
    [0.0, 0.0, 0.02]
}

impl Default for GeometrySection {
    fn default() -> Self {
        Self {
            disc_radius: default_disc_radius(),
            disc_gap: default_disc_gap(),
            joint_spacing: default_joint_spacing(),
            hole_offset: None,
            disc_count: default_disc_count(),
            end_offset: default_end_offset(),
            axial_limit_deg: None,
        }
    }
}

impl GeometrySection {
    /// Geometry with the cable hole at its configured or seed position.
    /// Enough for outputs that never route the cable, and usable on chains
    /// too short to reproduce the bench datum.
    pub fn to_uncalibrated_geometry(&self) -> Result<DiscGeometry, contispine_core::Error> {
        let axial_limit = match self.axial_limit_deg {
            Some(deg) => deg.to_radians(),
            None => 90.0_f64.to_radians() / self.disc_count.max(1) as f64,
        };
        DiscGeometry::new(
            self.disc_radius,
            self.disc_gap,
            self.joint_spacing,
            self.hole_offset.unwrap_or(0.03),
            self.disc_count,
            Vector3::new(self.end_offset[0], self.end_offset[1], self.end_offset[2]),
            axial_limit,
        )
    }

    /// Geometry with the cable hole fitted to the bench retraction datum
    /// when the config leaves it open.
    pub fn to_geometry(&self) -> Result<DiscGeometry, contispine_core::Error> {
        let mut geometry = self.to_uncalibrated_geometry()?;
        if self.hole_offset.is_none() {
            geometry.hole_offset = calibrate_hole_radius(
                &[(REFERENCE_RETRACTION_M, REFERENCE_TOTAL_BEND_RAD)],
                &geometry,
            )?;
        }
        Ok(geometry)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequirementsSection {
    #[serde(default = "default_sagittal_deg")]
    pub sagittal_deg: f64,
    #[serde(default = "default_lateral_deg")]
    pub lateral_deg: f64,
    #[serde(default = "default_transverse_deg")]
    pub transverse_deg: f64,
}

fn default_sagittal_deg() -> f64 {
    70.0
}

fn default_lateral_deg() -> f64 {
    20.0
}

fn default_transverse_deg() -> f64 {
    90.0
}

impl Default for RequirementsSection {
    fn default() -> Self {
        Self {
            sagittal_deg: default_sagittal_deg(),
            lateral_deg: default_lateral_deg(),
            transverse_deg: default_transverse_deg(),
        }
    }
}

impl RequirementsSection {
    pub fn to_requirements(&self) -> MotionRequirements {
        MotionRequirements {
            sagittal: self.sagittal_deg.to_radians(),
            lateral: self.lateral_deg.to_radians(),
            transverse: self.transverse_deg.to_radians(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSection {
    /// Disc radius sweep range, m, endpoints included.
    #[serde(default = "default_radius_range")]
    pub radius_range: [f64; 2],
    /// Disc gap sweep range, m, endpoints included.
    #[serde(default = "default_gap_range")]
    pub gap_range: [f64; 2],
    #[serde(default = "default_radius_steps")]
    pub radius_steps: usize,
    #[serde(default = "default_gap_steps")]
    pub gap_steps: usize,
    /// Per-joint bend the gap solver is asked to hit for the report row.
    #[serde(default = "default_target_bend_deg")]
    pub target_bend_limit_deg: f64,
}

fn default_radius_range() -> [f64; 2] {
    [0.05, 0.10]
}

fn default_gap_range() -> [f64; 2] {
    [0.001, 0.004]
}

fn default_radius_steps() -> usize {
    6
}

fn default_gap_steps() -> usize {
    7
}

fn default_target_bend_deg() -> f64 {
    20.0
}

impl Default for DesignSection {
    fn default() -> Self {
        Self {
            radius_range: default_radius_range(),
            gap_range: default_gap_range(),
            radius_steps: default_radius_steps(),
            gap_steps: default_gap_steps(),
            target_bend_limit_deg: default_target_bend_deg(),
        }
    }
}

/// Where the statics lever arms come from.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ArmsSection {
    /// Hole offset and half the joint spacing, foreshortened by the bend.
    #[default]
    FromGeometry,
    /// Explicit cable and backbone arms, m.
    Direct { cable_arm: f64, backbone_arm: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticsSection {
    /// Cable tension, N.
    #[serde(default = "default_cable_force")]
    pub cable_force: f64,
    /// Uniform per-joint bend the lever arms are evaluated at. The free-body
    /// residual columns are always computed at the neutral configuration,
    /// where the closed form is exact.
    #[serde(default)]
    pub per_joint_bend_deg: f64,
    #[serde(default)]
    pub arms: ArmsSection,
}

fn default_cable_force() -> f64 {
    100.0
}

impl Default for StaticsSection {
    fn default() -> Self {
        Self {
            cable_force: default_cable_force(),
            per_joint_bend_deg: 0.0,
            arms: ArmsSection::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiomechSection {
    #[serde(default = "default_body_mass")]
    pub body_mass: f64,
    #[serde(default = "default_load_mass")]
    pub load_mass: f64,
    #[serde(default = "default_trunk_length")]
    pub trunk_length: f64,
    #[serde(default = "default_body_lever_ratio")]
    pub body_lever_ratio: f64,
    #[serde(default = "default_hand_offset")]
    pub hand_offset: f64,
    #[serde(default = "default_muscle_arm")]
    pub muscle_arm: f64,
    #[serde(default = "default_assist_arm")]
    pub assist_arm: f64,
    /// Largest assist force of the raised-cosine profile, N.
    #[serde(default = "default_peak_assist")]
    pub peak_assist: f64,
    #[serde(default = "default_cycle_duration")]
    pub cycle_duration: f64,
    #[serde(default = "default_peak_angle_deg")]
    pub peak_angle_deg: f64,
    #[serde(default = "default_biomech_samples")]
    pub samples: usize,
}

fn default_body_mass() -> f64 {
    41.0
}

fn default_load_mass() -> f64 {
    15.0
}

fn default_trunk_length() -> f64 {
    0.5
}

fn default_body_lever_ratio() -> f64 {
    0.5
}

fn default_hand_offset() -> f64 {
    0.25
}

fn default_muscle_arm() -> f64 {
    0.05
}

fn default_assist_arm() -> f64 {
    0.30
}

fn default_peak_assist() -> f64 {
    250.0
}

fn default_cycle_duration() -> f64 {
    8.0
}

fn default_peak_angle_deg() -> f64 {
    70.0
}

fn default_biomech_samples() -> usize {
    800
}

impl Default for BiomechSection {
    fn default() -> Self {
        Self {
            body_mass: default_body_mass(),
            load_mass: default_load_mass(),
            trunk_length: default_trunk_length(),
            body_lever_ratio: default_body_lever_ratio(),
            hand_offset: default_hand_offset(),
            muscle_arm: default_muscle_arm(),
            assist_arm: default_assist_arm(),
            peak_assist: default_peak_assist(),
            cycle_duration: default_cycle_duration(),
            peak_angle_deg: default_peak_angle_deg(),
            samples: default_biomech_samples(),
        }
    }
}

impl BiomechSection {
    pub fn to_anthropometrics(&self) -> Anthropometrics {
        Anthropometrics {
            body_mass: self.body_mass,
            load_mass: self.load_mass,
            trunk_length: self.trunk_length,
            body_lever_ratio: self.body_lever_ratio,
            hand_offset: self.hand_offset,
        }
    }

    pub fn to_arms(&self) -> MomentArms {
        MomentArms { muscle_arm: self.muscle_arm, assist_arm: self.assist_arm }
    }
}

/// PID gain overrides. Absent fields keep the committed tuning for the loop
/// the section belongs to, so a single gain can be changed or swept alone.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainsSection {
    pub kp: Option<f64>,
    pub ki: Option<f64>,
    pub kd: Option<f64>,
    pub output_min: Option<f64>,
    pub output_max: Option<f64>,
    pub integral_min: Option<f64>,
    pub integral_max: Option<f64>,
}

impl GainsSection {
    fn resolve(&self, base: &PidGains) -> PidGains {
        PidGains {
            kp: self.kp.unwrap_or(base.kp),
            ki: self.ki.unwrap_or(base.ki),
            kd: self.kd.unwrap_or(base.kd),
            output_min: self.output_min.unwrap_or(base.output_min),
            output_max: self.output_max.unwrap_or(base.output_max),
            integral_min: self.integral_min.unwrap_or(base.integral_min),
            integral_max: self.integral_max.unwrap_or(base.integral_max),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GravitySection {
    /// N of cable force per unit sine of trunk angle.
    #[serde(default = "default_gravity_stiffness")]
    pub stiffness: f64,
    /// N of cable force per rad/s of flexion rate.
    #[serde(default = "default_gravity_damping")]
    pub damping: f64,
}

fn default_gravity_stiffness() -> f64 {
    contispine_core::control::GravityStiffnessParams::default().stiffness
}

fn default_gravity_damping() -> f64 {
    contispine_core::control::GravityStiffnessParams::default().damping
}

impl Default for GravitySection {
    fn default() -> Self {
        Self { stiffness: default_gravity_stiffness(), damping: default_gravity_damping() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpedanceSection {
    /// N*m/rad.
    #[serde(default = "default_impedance_stiffness")]
    pub stiffness: f64,
    /// N*m*s/rad.
    #[serde(default = "default_impedance_damping")]
    pub damping: f64,
    /// N*m*s^2/rad.
    #[serde(default)]
    pub inertia: f64,
}

fn default_impedance_stiffness() -> f64 {
    contispine_core::control::ImpedanceParams::default().stiffness
}

fn default_impedance_damping() -> f64 {
    contispine_core::control::ImpedanceParams::default().damping
}

impl Default for ImpedanceSection {
    fn default() -> Self {
        Self {
            stiffness: default_impedance_stiffness(),
            damping: default_impedance_damping(),
            inertia: 0.0,
        }
    }
}

/// Desired trunk state for the impedance law: deg, deg/s, deg/s^2.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesiredSection {
    #[serde(default)]
    pub angle_deg: f64,
    #[serde(default)]
    pub velocity_deg: f64,
    #[serde(default)]
    pub acceleration_deg: f64,
}

/// Plant constant overrides. Absent fields keep the bench-rig values.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantSection {
    pub torque_constant: Option<f64>,
    pub nominal_torque: Option<f64>,
    pub gear_ratio: Option<f64>,
    pub drum_radius: Option<f64>,
    pub rotor_inertia: Option<f64>,
    pub viscous_friction: Option<f64>,
    pub current_lag: Option<f64>,
    pub cable_stiffness: Option<f64>,
    pub force_saturation: Option<f64>,
    pub friction_curvature: Option<f64>,
    pub velocity_band: Option<f64>,
    pub speed_limit: Option<f64>,
}

impl PlantSection {
    fn resolve(&self, base: &PlantParams) -> PlantParams {
        PlantParams {
            torque_constant: self.torque_constant.unwrap_or(base.torque_constant),
            nominal_torque: self.nominal_torque.unwrap_or(base.nominal_torque),
            gear_ratio: self.gear_ratio.unwrap_or(base.gear_ratio),
            drum_radius: self.drum_radius.unwrap_or(base.drum_radius),
            rotor_inertia: self.rotor_inertia.unwrap_or(base.rotor_inertia),
            viscous_friction: self.viscous_friction.unwrap_or(base.viscous_friction),
            current_lag: self.current_lag.unwrap_or(base.current_lag),
            cable_stiffness: self.cable_stiffness.unwrap_or(base.cable_stiffness),
            force_saturation: self.force_saturation.unwrap_or(base.force_saturation),
            friction_curvature: self.friction_curvature.unwrap_or(base.friction_curvature),
            velocity_band: self.velocity_band.unwrap_or(base.velocity_band),
            speed_limit: self.speed_limit.unwrap_or(base.speed_limit),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSection {
    #[serde(default = "default_cycles")]
    pub cycles: usize,
    #[serde(default = "default_cycle_duration")]
    pub cycle_duration: f64,
    #[serde(default = "default_peak_angle_deg")]
    pub peak_angle_deg: f64,
    #[serde(default = "default_control_period")]
    pub control_period: f64,
    #[serde(default = "default_substeps")]
    pub substeps: usize,
    #[serde(default = "default_lever")]
    pub lever: f64,
    #[serde(default = "default_reference")]
    pub reference: String,
    #[serde(default = "default_controller")]
    pub controller: String,
    #[serde(default = "default_true")]
    pub feedforward: bool,
    #[serde(default)]
    pub gravity: GravitySection,
    #[serde(default)]
    pub impedance: ImpedanceSection,
    #[serde(default)]
    pub desired: DesiredSection,
    #[serde(default)]
    pub plant: PlantSection,
    #[serde(default)]
    pub force_gains: GainsSection,
    #[serde(default)]
    pub velocity_gains: GainsSection,
}

fn default_cycles() -> usize {
    10
}

fn default_control_period() -> f64 {
    1e-3
}

fn default_substeps() -> usize {
    10
}

fn default_lever() -> f64 {
    0.30
}

fn default_reference() -> String {
    "gravity".to_string()
}

fn default_controller() -> String {
    "closed_loop_force".to_string()
}

impl Default for ControlSection {
    fn default() -> Self {
        Self {
            cycles: default_cycles(),
            cycle_duration: default_cycle_duration(),
            peak_angle_deg: default_peak_angle_deg(),
            control_period: default_control_period(),
            substeps: default_substeps(),
            lever: default_lever(),
            reference: default_reference(),
            controller: default_controller(),
            feedforward: true,
            gravity: GravitySection::default(),
            impedance: ImpedanceSection::default(),
            desired: DesiredSection::default(),
            plant: PlantSection::default(),
            force_gains: GainsSection::default(),
            velocity_gains: GainsSection::default(),
        }
    }
}

impl ControlSection {
    pub fn to_sim_config(&self) -> SimConfig {
        let base = SimConfig::default();
        SimConfig {
            cycles: self.cycles,
            cycle_duration: self.cycle_duration,
            peak_angle: self.peak_angle_deg.to_radians(),
            control_period: self.control_period,
            substeps: self.substeps,
            lever: self.lever,
            reference: self.reference.clone(),
            controller: self.controller.clone(),
            feedforward: self.feedforward,
            gravity: contispine_core::control::GravityStiffnessParams {
                stiffness: self.gravity.stiffness,
                damping: self.gravity.damping,
            },
            impedance: contispine_core::control::ImpedanceParams {
                stiffness: self.impedance.stiffness,
                damping: self.impedance.damping,
                inertia: self.impedance.inertia,
            },
            desired: TrunkState {
                angle: self.desired.angle_deg.to_radians(),
                velocity: self.desired.velocity_deg.to_radians(),
                acceleration: self.desired.acceleration_deg.to_radians(),
            },
            plant: self.plant.resolve(&base.plant),
            force_gains: self.force_gains.resolve(&base.force_gains),
            velocity_gains: self.velocity_gains.resolve(&base.velocity_gains),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteerSection {
    /// Largest retraction of the emitted curve, cm. Omitted means the bench
    /// datum retraction, capped by what the geometry can invert.
    #[serde(default)]
    pub max_retraction_cm: Option<f64>,
    #[serde(default = "default_steer_samples")]
    pub samples: usize,
}

fn default_steer_samples() -> usize {
    25
}

impl Default for SteerSection {
    fn default() -> Self {
        Self { max_retraction_cm: None, samples: default_steer_samples() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// Dotted path of the scalar config key to sweep.
    pub parameter: String,
    pub values: Vec<f64>,
    /// Which scenario each value runs: "simulate" or "biomech".
    #[serde(default = "default_sweep_target")]
    pub target: String,
}

fn default_sweep_target() -> String {
    "simulate".to_string()
}

/// Parse one `path=value` override. The value is JSON when it parses as
/// JSON, a bare string otherwise, so `a.b=0.3`, `a.b=true`, `a.b=[1,2]`,
/// and `a.b=gravity` all read naturally.
fn parse_set(pair: &str) -> Result<(Vec<String>, Value), ConfigError> {
    let (path, raw) = pair
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("--set needs path=value, got \"{pair}\"")))?;
    if path.is_empty() || path.split('.').any(|part| part.is_empty()) {
        return Err(ConfigError(format!("--set path \"{path}\" is not a dotted key path")));
    }
    let value = serde_json::from_str::<Value>(raw)
        .unwrap_or_else(|_| Value::String(raw.to_string()));
    Ok((path.split('.').map(str::to_string).collect(), value))
}

/// Set one dotted path inside a JSON object tree, creating intermediate
/// objects as needed. Unknown leaf keys survive here and are rejected later
/// by the typed parse.
pub fn set_path(root: &mut Value, path: &[String], value: Value) -> Result<(), ConfigError> {
    let mut node = root;
    for key in &path[..path.len() - 1] {
        let object = node.as_object_mut().ok_or_else(|| {
            ConfigError(format!("config key \"{key}\" is not an object, cannot set below it"))
        })?;
        node = object.entry(key.clone()).or_insert_with(|| Value::Object(Default::default()));
    }
    let object = node.as_object_mut().ok_or_else(|| {
        ConfigError(format!(
            "config key \"{}\" is not an object, cannot set below it",
            path[path.len() - 2]
        ))
    })?;
    object.insert(path[path.len() - 1].clone(), value);
    Ok(())
}

/// Read a scenario file and fold every override in. `mode_sets` are the
/// overrides the subcommand flags imply; `user_sets` are raw `--set` pairs.
/// The result is the effective configuration tree, still untyped so sweeps
/// can stamp values into it.
pub fn effective_value(
    path: &Path,
    mode_sets: &[(&str, Value)],
    user_sets: &[String],
) -> Result<Value, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    let mut value: Value = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("config {} is not valid JSON: {e}", path.display())))?;
    if !value.is_object() {
        return Err(ConfigError(format!(
            "config {} must be a JSON object",
            path.display()
        )));
    }

    if let Ok(dir) = std::env::var("CONTISPINE_OUT") {
        let path = ["run".to_string(), "output_dir".to_string()];
        set_path(&mut value, &path, Value::String(dir))?;
    }
    for (dotted, set_value) in mode_sets {
        let path: Vec<String> = dotted.split('.').map(str::to_string).collect();
        set_path(&mut value, &path, set_value.clone())?;
    }
    for pair in user_sets {
        let (path, set_value) = parse_set(pair)?;
        set_path(&mut value, &path, set_value)?;
    }
    Ok(value)
}

/// Typed parse plus the schema gate.
pub fn from_value(value: Value) -> Result<ScenarioConfig, ConfigError> {
    if value.get("schema_version").is_none() {
        return Err(ConfigError("config is missing required key schema_version".to_string()));
    }
    let config: ScenarioConfig = serde_json::from_value(value)
        .map_err(|e| ConfigError(format!("config rejected: {e}")))?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(ConfigError(format!(
            "schema_version {} is not supported, this build reads {}",
            config.schema_version, SCHEMA_VERSION
        )));
    }
    Ok(config)
}

/// Canonical bytes of the effective configuration, for hashing and sweeps.
pub fn canonical_json(config: &ScenarioConfig) -> String {
    serde_json::to_string(config).expect("scenario config serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> Value {
        serde_json::json!({ "schema_version": 1 })
    }

    #[test]
    fn minimal_config_fills_bench_defaults() {
        let config = from_value(minimal()).unwrap();
        assert_eq!(config.run.output_dir, "out");
        assert_eq!(config.geometry.disc_count, 20);
        assert_eq!(config.control.cycles, 10);
        let sim = config.control.to_sim_config();
        assert!(sim.validate().is_ok());
        assert_eq!(sim.plant.gear_ratio, 36.0);
        assert!((sim.peak_angle - 70.0_f64.to_radians()).abs() < 1e-15);
    }

    #[test]
    fn unknown_keys_are_rejected_at_any_depth() {
        let mut top = minimal();
        top["typo"] = Value::from(1);
        assert!(from_value(top).is_err());

        let mut nested = minimal();
        nested["control"] = serde_json::json!({ "plant": { "gear_ration": 36.0 } });
        let err = from_value(nested).unwrap_err();
        assert!(err.0.contains("gear_ration"), "{err}");
    }

    #[test]
    fn schema_version_is_mandatory_and_pinned() {
        assert!(from_value(serde_json::json!({})).is_err());
        assert!(from_value(serde_json::json!({ "schema_version": 2 })).is_err());
    }

    #[test]
    fn set_path_overrides_and_creates_sections() {
        let mut value = minimal();
        let path: Vec<String> =
            ["control", "plant", "friction_curvature"].iter().map(|s| s.to_string()).collect();
        set_path(&mut value, &path, Value::from(0.3)).unwrap();
        let config = from_value(value).unwrap();
        let plant = config.control.to_sim_config().plant;
        // The touched field moves, its siblings keep the bench values.
        assert_eq!(plant.friction_curvature, 0.3);
        assert_eq!(plant.gear_ratio, 36.0);
    }

    #[test]
    fn set_pairs_parse_json_and_bare_strings() {
        let (path, value) = parse_set("control.reference=impedance").unwrap();
        assert_eq!(path, ["control", "reference"]);
        assert_eq!(value, Value::String("impedance".to_string()));

        let (_, value) = parse_set("control.feedforward=false").unwrap();
        assert_eq!(value, Value::Bool(false));

        let (_, value) = parse_set("geometry.end_offset=[0,0,0.05]").unwrap();
        assert!(value.is_array());

        assert!(parse_set("no_equals_sign").is_err());
        assert!(parse_set("a..b=1").is_err());
    }

    #[test]
    fn calibrated_hole_offset_kicks_in_when_omitted() {
        let config = from_value(minimal()).unwrap();
        let geometry = config.geometry.to_geometry().unwrap();
        // The fitted offset sits near the seed but is not the seed.
        assert!((geometry.hole_offset - 0.03).abs() < 0.005);
        assert_ne!(geometry.hole_offset, 0.03);

        let mut explicit = minimal();
        explicit["geometry"] = serde_json::json!({ "hole_offset": 0.025 });
        let config = from_value(explicit).unwrap();
        assert_eq!(config.geometry.to_geometry().unwrap().hole_offset, 0.025);
    }

    #[test]
    fn canonical_json_is_stable_for_equal_configs() {
        let a = canonical_json(&from_value(minimal()).unwrap());
        let b = canonical_json(&from_value(minimal()).unwrap());
        assert_eq!(a, b);
    }
}
