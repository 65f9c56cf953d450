//! Config policing and exit codes, exercised through the compiled binary:
//! 0 for success, 1 for runtime failures, 2 for anything wrong with the
//! request.

mod common;

use common::{exit_code, stderr_text, Scenario};
use serde_json::json;

#[test]
fn valid_minimal_config_succeeds() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["steer"]);
    common::assert_success(&output);
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn unknown_top_level_key_is_rejected_by_name() {
    let scenario = Scenario::new(json!({ "schema_version": 1, "geomtry": {} }));
    let output = scenario.run(&["design"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("geomtry"), "stderr: {}", stderr_text(&output));
}

#[test]
fn unknown_nested_key_is_rejected_by_name() {
    let scenario = Scenario::new(json!({
        "schema_version": 1,
        "geometry": { "disc_radii": 0.07 }
    }));
    let output = scenario.run(&["design"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("disc_radii"));
}

#[test]
fn missing_schema_version_is_rejected() {
    let scenario = Scenario::new(json!({ "geometry": {} }));
    let output = scenario.run(&["design"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("schema_version"));
}

#[test]
fn unsupported_schema_version_is_rejected() {
    let scenario = Scenario::new(json!({ "schema_version": 2 }));
    let output = scenario.run(&["design"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("not supported"));
}

#[test]
fn missing_config_file_is_a_usage_error() {
    let scenario = Scenario::minimal();
    let missing = scenario.dir.path().join("absent.json");
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_contispine"))
        .args(["design", "--config"])
        .arg(&missing)
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("cannot read config"));
}

#[test]
fn config_that_is_not_a_json_object_is_rejected() {
    let scenario = Scenario::new(json!([1, 2, 3]));
    let output = scenario.run(&["design"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn set_without_equals_sign_is_rejected() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["design", "--set", "control.cycles"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("path=value"));
}

#[test]
fn set_with_malformed_path_is_rejected() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["design", "--set", "control..cycles=2"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("dotted key path"));
}

#[test]
fn set_with_unknown_leaf_key_is_rejected() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["design", "--set", "geometry.disc_radii=0.07"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("disc_radii"));
}

#[test]
fn zero_cycles_is_a_config_error() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["simulate", "--cycles", "0"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("cycles"));
}

#[test]
fn unknown_reference_law_is_a_config_error() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["simulate", "--reference", "pd", "--cycles", "1"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = stderr_text(&output);
    assert!(stderr.contains("pd") && stderr.contains("available"), "stderr: {stderr}");
}

#[test]
fn negative_cable_force_is_a_config_error() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["statics", "--set", "statics.cable_force=-5"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("cable_force"));
}

#[test]
fn infeasible_geometry_is_a_config_error() {
    // Cable hole outside the disc rim.
    let scenario = Scenario::minimal();
    let output = scenario.run(&["steer", "--set", "geometry.hole_offset=0.08"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn unstable_simulation_is_a_runtime_error() {
    // A stiff cable integrated far too coarsely diverges; the loop reports
    // the failing tick rather than emitting a corrupt trace.
    let scenario = Scenario::minimal();
    let output = scenario.run(&[
        "simulate",
        "--cycles",
        "1",
        "--set",
        "control.substeps=1",
        "--set",
        "control.plant.cable_stiffness=1e7",
        "--set",
        "control.plant.rotor_inertia=1e-7",
        "--set",
        "control.plant.speed_limit=1e12",
        "--set",
        "control.plant.nominal_torque=1e9",
        "--set",
        "control.plant.torque_constant=1e6",
    ]);
    assert_eq!(exit_code(&output), 1);
    let stderr = stderr_text(&output);
    assert!(stderr.contains("unstable") && stderr.contains("tick"), "stderr: {stderr}");
}

#[test]
fn clap_usage_error_exits_2() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_contispine"))
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn environment_variable_redirects_outputs() {
    let scenario = Scenario::minimal();
    let output = scenario.run(&["steer"]);
    common::assert_success(&output);
    assert!(scenario.out_dir().join("steer.csv").is_file());
}

#[test]
fn set_override_beats_the_environment_variable() {
    let scenario = Scenario::minimal();
    let explicit = scenario.dir.path().join("explicit");
    let pair = format!("run.output_dir={}", explicit.display());
    let output = scenario.run(&["steer", "--set", &pair]);
    common::assert_success(&output);
    assert!(explicit.join("steer.csv").is_file());
    assert!(!scenario.out_dir().join("steer.csv").exists());
}

#[test]
fn config_output_dir_is_used_without_overrides() {
    let dir = tempfile::TempDir::new().expect("scratch dir");
    let target = dir.path().join("from_config");
    let scenario = Scenario::new(json!({
        "schema_version": 1,
        "run": { "output_dir": target.to_str().unwrap() }
    }));
    let output = scenario.run_no_env(&["steer"]);
    common::assert_success(&output);
    assert!(target.join("steer.csv").is_file());
}
