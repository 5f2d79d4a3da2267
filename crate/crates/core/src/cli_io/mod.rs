//! Command surface shared by the `hurzeta` binary and the tests: run
//! configuration, report envelope, and JSON / CSV / human encodings.
//!
//! A [`RunConfig`] fully determines a run. The envelope echoes it, so a report
//! can be re-executed from its own JSON and compared record by record
//! (everything except `timing_ms` is reproducible bit for bit).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{HurzetaError, Result};
use crate::quadrature::QuadratureSpec;

mod commands;
mod format;
pub mod parse;

pub use commands::run;
pub use format::{render, to_csv, to_human, to_json, CSV_FLOAT_DIGITS};

/// Seed used by randomized suites unless the caller picks one.
pub const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Genfun,
    Oddzeta,
    Validate,
    Sweep,
}

impl Command {
    pub fn required_keys(&self) -> &'static [&'static str] {
        match self {
            Command::Eval | Command::Sweep => &["k", "b"],
            Command::Genfun => &["x", "b"],
            Command::Oddzeta => &["j"],
            Command::Validate => &["suite"],
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Genfun => "genfun",
            Command::Oddzeta => "oddzeta",
            Command::Validate => "validate",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = HurzetaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            _ => Err(HurzetaError::Usage(format!(
                "unknown output format {s:?} (json, csv, human)"
            ))),
        }
    }
}

/// Optional overrides of [`QuadratureSpec::default`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: QuadratureSpec) -> Result<QuadratureSpec> {
        let mut spec = base;
        if let Some(v) = self.rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            spec.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            spec.max_subdivisions = v;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    /// Raw command-specific values exactly as given on the command line.
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            params: BTreeMap::new(),
            tolerances: ToleranceOverrides::default(),
            output_format: OutputFormat::Json,
            output_path: None,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<String>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn param(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| HurzetaError::Usage(format!(
                "{} needs --{key}",
                self.command.as_str()
            )))
    }

    pub fn spec(&self) -> Result<QuadratureSpec> {
        self.tolerances.apply(QuadratureSpec::default())
    }

    pub fn validate(&self) -> Result<()> {
        for key in self.command.required_keys() {
            self.param(key)?;
        }
        self.spec()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Pass,
    Fail,
    Unsupported,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
            Status::Error => "error",
        })
    }
}

/// One evaluated cell, carrying everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    pub kind: String,
    pub status: Status,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub error_estimates: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
    pub timing_ms: f64,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            index: 0,
            kind: kind.to_string(),
            status: Status::Ok,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            error_estimates: BTreeMap::new(),
            warnings: Vec::new(),
            error: None,
            timing_ms: 0.0,
        }
    }

    pub fn input(&mut self, key: &str, v: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), v);
        self
    }

    pub fn output(&mut self, key: &str, v: Value) -> &mut Self {
        self.outputs.insert(key.to_string(), v);
        self
    }

    pub fn estimate(&mut self, key: &str, v: f64) -> &mut Self {
        self.error_estimates.insert(key.to_string(), num(v));
        self
    }

    pub fn fail_with(&mut self, status: Status, err: &HurzetaError) -> &mut Self {
        self.status = status;
        self.error = Some(err.to_string());
        self
    }

    /// Copy with `timing_ms` zeroed, for reproducibility comparisons.
    pub fn untimed(&self) -> Record {
        Record {
            timing_ms: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub passed: usize,
    pub failed: usize,
    pub unsupported: usize,
    pub errors: usize,
}

impl Summary {
    pub fn from_records(records: &[Record]) -> Self {
        let mut s = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.status {
                Status::Ok => s.ok += 1,
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Unsupported => s.unsupported += 1,
                Status::Error => s.errors += 1,
            }
        }
        s
    }

    pub fn succeeded(&self) -> usize {
        self.ok + self.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub config_echo: RunConfig,
    pub results: Vec<Record>,
    pub summary: Summary,
}

/// Process exit code for a successful run of the CLI (usage errors map to 2
/// before any envelope exists).
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

impl ReportEnvelope {
    pub fn new(config: RunConfig, results: Vec<Record>) -> Self {
        let summary = Summary::from_records(&results);
        ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_echo: config,
            results,
            summary,
        }
    }

    /// `validate` succeeds only if every check passed; `genfun` if any point
    /// evaluated; the other commands if no cell hit a numeric failure.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        let ok = match self.config_echo.command {
            Command::Validate => s.failed == 0 && s.errors == 0 && s.total > 0,
            Command::Genfun => s.succeeded() > 0,
            _ => s.errors == 0 && s.failed == 0,
        };
        if ok {
            EXIT_OK
        } else {
            EXIT_NUMERIC
        }
    }

    /// Results with timing stripped.
    pub fn untimed_results(&self) -> Vec<Record> {
        self.results.iter().map(Record::untimed).collect()
    }
}

/// Exit code for an error raised before or instead of a report.
pub fn exit_code_for_error(e: &HurzetaError) -> i32 {
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_NUMERIC
    }
}

/// JSON number, or a string for values JSON cannot represent.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else if v.is_nan() {
        Value::from("NaN")
    } else if v > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

/// `{"re": .., "im": ..}`
pub fn cplx(z: Complex64) -> Value {
    serde_json::json!({ "re": num(z.re), "im": num(z.im) })
}
