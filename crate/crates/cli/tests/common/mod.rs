//! Helpers for driving the compiled binary against scratch scenario files.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

/// A scenario file in a scratch directory, with outputs aimed next to it.
pub struct Scenario {
    pub dir: TempDir,
    pub config_path: PathBuf,
}

impl Scenario {
    pub fn new(config: serde_json::Value) -> Self {
        let dir = TempDir::new().expect("scratch dir");
        let config_path = dir.path().join("scenario.json");
        std::fs::write(&config_path, serde_json::to_string_pretty(&config).unwrap())
            .expect("write config");
        Self { dir, config_path }
    }

    /// The smallest valid scenario: every section at its defaults.
    pub fn minimal() -> Self {
        Self::new(serde_json::json!({ "schema_version": 1 }))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.dir.path().join("out")
    }

    /// Run `contispine <args> --config <file>` with outputs redirected into
    /// the scratch directory through the environment override.
    pub fn run(&self, args: &[&str]) -> Output {
        let mut command = Command::new(env!("CARGO_BIN_EXE_contispine"));
        command
            .args(args)
            .arg("--config")
            .arg(&self.config_path)
            .env("CONTISPINE_OUT", self.out_dir());
        command.output().expect("binary runs")
    }

    /// Run without the environment override, so the config file or --set
    /// decides where outputs land.
    pub fn run_no_env(&self, args: &[&str]) -> Output {
        let mut command = Command::new(env!("CARGO_BIN_EXE_contispine"));
        command
            .args(args)
            .arg("--config")
            .arg(&self.config_path)
            .env_remove("CONTISPINE_OUT");
        command.output().expect("binary runs")
    }

    pub fn read_output(&self, name: &str) -> String {
        let path = self.out_dir().join(name);
        std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
    }

    pub fn csv(&self, name: &str) -> Csv {
        Csv::parse(&self.read_output(name))
    }
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

pub fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

pub fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "command failed with {:?}: {}",
        output.status.code(),
        stderr_text(output)
    );
}

/// A parsed output table: header names, units row, and string cells. The
/// emitted tables never quote commas, so a plain split is faithful.
pub struct Csv {
    pub columns: Vec<String>,
    pub units: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn parse(text: &str) -> Self {
        assert!(!text.contains('\r'), "CSV must use LF line endings");
        let mut lines = text.lines();
        let split = |line: &str| line.split(',').map(str::to_string).collect::<Vec<_>>();
        let columns = split(lines.next().expect("header row"));
        let units = split(lines.next().expect("units row"));
        let rows: Vec<Vec<String>> = lines.map(split).collect();
        for row in &rows {
            assert_eq!(row.len(), columns.len(), "ragged CSV row {row:?}");
        }
        Self { columns, units, rows }
    }

    pub fn col(&self, name: &str) -> usize {
        self.columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("no column {name} in {:?}", self.columns))
    }

    pub fn text(&self, row: usize, name: &str) -> &str {
        &self.rows[row][self.col(name)]
    }

    pub fn f64(&self, row: usize, name: &str) -> f64 {
        let cell = self.text(row, name);
        cell.parse().unwrap_or_else(|e| panic!("cell {cell:?} is not a float: {e}"))
    }

    pub fn column_f64(&self, name: &str) -> Vec<f64> {
        (0..self.rows.len()).map(|row| self.f64(row, name)).collect()
    }
}
